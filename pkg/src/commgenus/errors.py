"""Exception types raised across the package.

Every error carries its class name into CLI output, so names are part of the
user-facing surface.
"""

from __future__ import annotations


class CommGenusError(Exception):
    """Base class for all package errors."""


# ring construction / validation
class NotAbelianGroup(CommGenusError):
    pass


class NotAssociative(CommGenusError):
    pass


class NotDistributive(CommGenusError):
    pass


class NotWellDefined(CommGenusError):
    """Structure constants are incompatible with the generator orders."""


class SizeLimitExceeded(CommGenusError):
    pass


class BudgetExceeded(CommGenusError):
    """A search space is larger than the configured budget."""

    def __init__(self, count: int, budget: int, what: str = "candidates") -> None:
        self.count = count
        self.budget = budget
        super().__init__(f"{count} {what} exceeds budget {budget}")


class InvalidElement(CommGenusError):
    pass


# graphs
class CommutativeRing(CommGenusError):
    """The ring is commutative, so its commuting graph has no vertices."""


class NotCliqueUnion(CommGenusError):
    pass


# theorem predictions
class HypothesisViolated(CommGenusError):
    pass


class NoSolutions(HypothesisViolated):
    """The linear constraint on the multiplicities has no positive solution."""


# catalog harness
class ConstructionFailed(CommGenusError):
    pass


class HypothesisMismatch(CommGenusError):
    pass


# file formats
class RingFileError(CommGenusError, ValueError):
    pass


class GraphFileError(CommGenusError, ValueError):
    pass
