"""Exact divisor and sheaf-cohomology computations on hyperelliptic curves."""

__version__ = "0.1.0"
