"""
Algorithms built on the core algebra: matroid intersection, distinct-sum permutations and sweeps.
"""

from .matroid import LinearMatroid, brute_force_common_basis, common_basis
from .snevily import Permutation, SnevilyPolynomial
from .sweeps import SweepReport, SweepRunner

__all__ = [
    'LinearMatroid',
    'brute_force_common_basis',
    'common_basis',
    'Permutation',
    'SnevilyPolynomial',
    'SweepReport',
    'SweepRunner'
]
