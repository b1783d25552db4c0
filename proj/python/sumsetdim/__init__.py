"""Sums of self-similar sets with a common contraction base."""

from ._sumsetdim import CapExceeded, classify, dimension, matchings, moran_root, run

__all__ = ["CapExceeded", "classify", "dimension", "matchings", "moran_root", "run"]
