"""Hypergeometric integrals on Jordan-block slices, their tau sequences and Laplace chains."""

__version__ = "0.1.0"
