"""Exact q-series toolkit for MacMahon-type generalized divisor sums."""

from .kernel import BACKEND
from .series import BiSeries

__all__ = ["BACKEND", "BiSeries"]
__version__ = "0.1.0"
