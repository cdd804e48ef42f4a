"""Commuting graphs of finite rings and their genus."""

from commgenus.errors import CommGenusError

__version__ = "0.1.0"

__all__ = ["CommGenusError", "__version__"]
