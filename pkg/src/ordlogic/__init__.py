"""Finite orders, size reasoning, relevance, self-reference, reliability and analogy."""

__version__ = "0.1.0"
