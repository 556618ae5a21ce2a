"""Executable checkers, constructions and brute-force oracles for algebraic
methods in extremal combinatorics."""

__version__ = "0.1.0"
