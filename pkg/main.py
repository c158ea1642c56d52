"""
Command-Line Entry Point
Run from the repository root: python main.py <command> ...
"""

import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())
