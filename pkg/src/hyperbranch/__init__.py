"""hyperbranch - exact symmetric hypergeometric orthogonal polynomials."""

__version__ = "0.1.0"
