import sys

from commgenus.cli import main

sys.exit(main())
