"""Exact toric mirror constructions for Fano polytopes.

The package walks the whole pipeline: weight-matrix GIT presentations of toric
varieties, Laurent polynomial mirrors of complete intersections inside them,
scaffoldings of the resulting Fano polytopes, inversion of a scaffolding back
into ambient weight data, and the surrounding combinatorics (mutations, nef
partitions, Cayley polytopes, amenable collections and their bundle towers).

All arithmetic is exact: integers and ``fractions.Fraction`` throughout.
"""

__version__ = "0.1.0"

from .errors import DomainError

__all__ = ["DomainError", "__version__"]
