"""Schubert patch ideals, Kazhdan-Lusztig ideals, and their Groebner and linkage structure."""

__version__ = "0.1.0"
