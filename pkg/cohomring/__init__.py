"""Rational equivariant cohomology of cohomogeneity-one actions."""

__version__ = "0.1.0"
