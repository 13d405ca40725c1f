"""Certified structural witnesses for graphs without large bicliques."""

__version__ = "0.1.0"
