"""Exhaustive zero statistics of Artin-Schreier L-functions over small finite fields."""

__version__ = "0.1.0"
