"""Programming-by-example synthesis of knowledge-powered string programs."""

__version__ = "0.1.0"
