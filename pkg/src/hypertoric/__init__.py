"""Exact topology of toric hyperkähler quotients, with a numeric flow lab."""

__version__ = "0.1.0"
