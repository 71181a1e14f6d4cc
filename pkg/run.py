#!/usr/bin/env python3
"""Entry point for the LabelFrag command line."""

import sys

from src.app import main

if __name__ == '__main__':
    sys.exit(main())
