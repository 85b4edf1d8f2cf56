#!/usr/bin/env python3
"""Simple runner script for scrabblelab."""

import sys

sys.path.insert(0, 'src')

from scrabblelab.cli import main

if __name__ == "__main__":
    sys.exit(main())
