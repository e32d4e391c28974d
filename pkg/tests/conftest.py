from fractions import Fraction

import pytest
from hypothesis import strategies as st

from superlab import settings
from superlab.algebra import GrassmannElement, SuperFunction
from superlab.classification import expand, sample_valid
from superlab.derivations import BER, FIELDS, KK, StructureConstants

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonzero_fractions = small_fractions.filter(lambda x: x != 0)
grid_values = st.sampled_from(settings.SCAN_GRID)


@st.composite
def grassmann_elements(draw, values=small_fractions):
    return GrassmannElement.from_components(*[draw(values) for _ in range(4)])


@st.composite
def super_functions(draw, max_terms=3):
    keys = draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=max_terms, unique=True))
    return SuperFunction(dict((key, draw(grassmann_elements())) for key in keys))


@st.composite
def grid_constants(draw):
    return StructureConstants(*[draw(grid_values) for _ in FIELDS])


@st.composite
def any_constants(draw):
    return StructureConstants(*[draw(small_fractions) for _ in FIELDS])


@st.composite
def valid_constants(draw):
    return expand(sample_valid(draw(st.integers(0, 10**6))))


@pytest.fixture
def kk():
    return KK


@pytest.fixture
def ber():
    return BER


@pytest.fixture
def generic():
    return expand(sample_valid(7))


@pytest.fixture
def half():
    return Fraction(1, 2)
