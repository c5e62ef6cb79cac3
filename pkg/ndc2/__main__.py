"""Run the command line with ``python -m ndc2``."""

import sys

from .cli import main

sys.exit(main())
