"""Exact homological algebra for bound quiver algebras."""
__version__ = "0.1.0"
