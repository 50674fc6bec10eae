"""
Exact algebra: finite abelian groups, field backends, characters and linear algebra.
"""

from .abelian_group import GroupElement, GroupSpec
from .characters import Character, FourierData
from .fields import CyclotomicFieldCtx, FieldBackend, FieldCtx, FieldElem, PrimePowerFieldCtx
from .linalg import Matrix
from .output_manager import OutputManager

__all__ = [
    'GroupElement',
    'GroupSpec',
    'Character',
    'FourierData',
    'CyclotomicFieldCtx',
    'FieldBackend',
    'FieldCtx',
    'FieldElem',
    'PrimePowerFieldCtx',
    'Matrix',
    'OutputManager'
]
