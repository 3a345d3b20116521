"""Exact verification engine for R-matrix and Drinfeld presentations of
Yangians and quantum affine algebras of classical types."""

__version__ = "0.1.0"
