"""
Run script for exlen.

Usage:
    cd src && python -m exlen.run <command> [options]
    or, from the repository root:
    PYTHONPATH=src python -m exlen.run <command> [options]
"""

from .main import main

if __name__ == "__main__":
    raise SystemExit(main())
