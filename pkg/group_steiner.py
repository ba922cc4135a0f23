#!/usr/bin/env python3
"""
Group Steiner Reduction Tool

This is the main entry point for the GSTP to STPG reduction tool.
It transforms group Steiner instances, solves them exactly or heuristically,
and checks the reduction's cost identity against brute-force oracles.
"""

import sys
import os

# Add current directory to Python path
sys.path.insert(0, os.path.dirname(__file__))

from main import main

if __name__ == "__main__":
    sys.exit(main())
