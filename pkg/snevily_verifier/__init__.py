"""
Snevily Verifier

Exact verification and witnessing of common character bases for pairs of
subsets of a finite abelian group, of permutations with pairwise distinct
sums, and of the determinant identities that connect them.
"""

__version__ = "1.0.0"

from .core.abelian_group import GroupElement, GroupSpec, abelian_groups_up_to, enumerate_elements
from .core.characters import Character, fourier_coefficients
from .core.fields import FieldCtx, build_cyclotomic_field, build_field, build_finite_field
from .core.linalg import Matrix, determinant
from .analyzers.matroid import LinearMatroid, common_basis, dual_witness, theorem1_characters
from .analyzers.snevily import (
    Permutation, SnevilyPolynomial, find_snevily_permutation, lemma4_permutation, snevily_polynomial,
)
from .analyzers.sweeps import SweepReport, SweepRunner

__all__ = [
    'GroupElement',
    'GroupSpec',
    'abelian_groups_up_to',
    'enumerate_elements',
    'Character',
    'fourier_coefficients',
    'FieldCtx',
    'build_cyclotomic_field',
    'build_field',
    'build_finite_field',
    'Matrix',
    'determinant',
    'LinearMatroid',
    'common_basis',
    'dual_witness',
    'theorem1_characters',
    'Permutation',
    'SnevilyPolynomial',
    'find_snevily_permutation',
    'lemma4_permutation',
    'snevily_polynomial',
    'SweepReport',
    'SweepRunner',
]
