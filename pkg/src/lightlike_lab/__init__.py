"""Exact construction and verification of lightlike submanifold frames
adapted to metallic structures on flat semi-Euclidean ambient spaces."""

__version__ = "0.1.0"
