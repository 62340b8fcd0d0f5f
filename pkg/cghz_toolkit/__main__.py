"""``python -m cghz_toolkit`` entry point."""

import sys

from cghz_toolkit.cli import main

if __name__ == "__main__":
    sys.exit(main())
