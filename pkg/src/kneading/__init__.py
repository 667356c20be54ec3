"""Kneading sequences of tent maps built from well-founded trees, and the
limit types of their postcritical omega-limit sets and inhomogeneities."""

__version__ = "0.1.0"
