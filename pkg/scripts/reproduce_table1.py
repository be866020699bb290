#!/usr/bin/env python3
"""Reproduce the 2x2x2x4 reference classification (24 representatives).

Prints one line per representative with its computed family label and a
summary line; exits nonzero if any label deviates.
"""

import sys

from sloccrank.cli import main

if __name__ == "__main__":
    sys.exit(main(["table1"]))
