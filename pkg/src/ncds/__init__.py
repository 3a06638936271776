"""Degree-truncated noncommutative series kernel over exact rationals, with a
double shuffle / reduced coaction / Kashiwara-Vergne verification harness."""

__version__ = "0.1.0"
