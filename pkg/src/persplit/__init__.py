"""Exact-arithmetic engine for the canonical splitting of a filtered
graded vector space under a degree-2 operator satisfying hard Lefschetz.

Everything is computed over the rationals (or Gaussian rationals for
Hodge bigradings) with zero tolerance: subspaces are reduced-echelon
bases, and every equality is exact.
"""

from .version import __version__

__all__ = ["__version__"]
