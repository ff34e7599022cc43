"""Graded phi-2-absorbing submodule predicates over finite graded rings and modules."""

__version__ = "0.1.0"
