#!/usr/bin/env python3
"""
Startup script for the choicenet experiment harness.

Runs the config named by CHOICENET_CONFIG (default: configs/identity-1d.toml)
unless explicit harness arguments are given.
"""

import os
import sys

from scripts.run_harness import main

if __name__ == "__main__":
    argv = sys.argv[1:] or ["run", os.environ.get("CHOICENET_CONFIG", "configs/identity-1d.toml")]
    sys.exit(main(argv))
