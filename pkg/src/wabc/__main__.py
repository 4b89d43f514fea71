"""``python -m wabc``."""

import sys

from wabc.cli import main

sys.exit(main())
