"""
Shared fixtures for the Snevily verifier test suite.
"""

import numpy as np
import pytest

from snevily_verifier.core.abelian_group import GroupSpec, parse_elements
from snevily_verifier.core.fields import build_cyclotomic_field, build_finite_field


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size acceptance sweeps (deselect with -m 'not slow')")


@pytest.fixture
def z3():
    return GroupSpec((3,))


@pytest.fixture
def z5():
    return GroupSpec((5,))


@pytest.fixture
def z2xz3():
    return GroupSpec((2, 3))


@pytest.fixture
def gf4():
    """GF(4) carrying a primitive cube root of unity"""
    return build_finite_field(2, 3)


@pytest.fixture
def gf8():
    return build_finite_field(2, 7)


@pytest.fixture
def cyc5():
    return build_cyclotomic_field(5)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def elems():
    """Parse a ;-separated element list in a given group"""
    def _parse(spec, text):
        return parse_elements(spec, text)
    return _parse
