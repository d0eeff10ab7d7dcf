"""Exact verification of the (gl_n, gl_m) duality for Bethe algebras."""

__version__ = "0.1.0"
