#!/usr/bin/env python3
"""
orbitquant - Main Entry Point

Exact symbolic and numerical verification of deformation quantization on
coadjoint orbits of aff(R), aff(C) and sl(2,R).

Commands:
- orbit     classify a functional, show a Darboux chart, check it
- star      truncated star product of two expressions
- verify    run verification suites and print a report
- evolve    evolve a line generator on an FFT grid
- homology  K-theory and periodic cyclic homology tables

Usage:
    python main.py <command> [options]

Common options (after the command):
    --json              Machine-readable output
    --seed N            Seed for randomized suites
    --jobs N            Worker threads
    --h H               Planck parameter as an exact rational
    --config PATH       Configuration file (default: config.yaml)
    --log-level LEVEL   DEBUG, INFO, WARNING, ERROR
    --log-dir DIR       Log directory

Examples:
    python main.py orbit classify --algebra sl2R --point "0,2,0"
    python main.py star --algebra affR --orbit upper --f "p" --g "exp(q)"
    python main.py verify --scope affR --json
    python main.py evolve --algebra affR --A "1,0" --t 1.0 --grid 1024
    python main.py homology --catalogue

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

import os
import sys

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("Interrupted")
        sys.exit(1)
