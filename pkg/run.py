# -*- coding: utf-8 -*-

"""
Main entry point for the C-GHZ concentration simulator.
"""

import sys

from cghz_toolkit.cli import main

if __name__ == '__main__':
    sys.exit(main())
