"""Allow ``python -m ykh``."""

import sys

from .cli import main

sys.exit(main())
