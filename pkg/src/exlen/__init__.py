"""
exlen: finite extriangulated length categories.

Closure operators, torsion lattices, brick labels and τ-tilting
bijections over finite presentations.
"""

__version__ = "1.0.0"
