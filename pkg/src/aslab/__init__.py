"""Artin-Schreier computations, dividing-line witness patterns and a valued-field rule engine."""

__version__ = "0.1.0"
