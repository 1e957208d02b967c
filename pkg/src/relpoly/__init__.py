"""Exact reliability polynomials of complete graphs and their one-point unions."""

__version__ = "0.1.0"
