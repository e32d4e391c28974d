from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superlab.classification import expand, sample_valid
from superlab.conditions import NotARepresentation, evaluate_conditions
from superlab.derivations import BER, ESSENTIAL_FIELDS, KK, StructureConstants
from superlab.isomorphism import (_UNKNOWNS, IDENTITY, AutomorphismParams, Infeasible, InvalidAutomorphism,
                                  Witness, _r, compose, derived_constraints, find_isomorphism, orbit_tangent_rank,
                                  transform)
from superlab.scalars import GaussianRational

from conftest import nonzero_fractions, small_fractions

seeds = st.integers(0, 10**6)


@st.composite
def real_automorphisms(draw, kind=None):
    x, y = draw(nonzero_fractions), draw(nonzero_fractions)
    u = draw(small_fractions)
    kind = kind or draw(st.sampled_from(['plus', 'minus']))
    return AutomorphismParams(kind, x, y, u, x*y - u)


@st.composite
def complex_automorphisms(draw):
    s = draw(st.sampled_from([1, -1]))
    x = draw(nonzero_fractions)
    u = draw(st.integers(-3, 3))
    kind = draw(st.sampled_from(['plus', 'minus']))
    return AutomorphismParams(kind, x, s / x, u, s - u, 'complex')


def test_identity():
    for k in (KK, BER, expand(sample_valid(3))):
        assert transform(IDENTITY, k) == k


def test_invalid_parameters():
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('plus', 1, 2, 1, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('plus', 0, 1, 0, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('twist', 1, 1, 1, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('plus', 2, 1, Fraction(1, 2), Fraction(3, 2), 'complex')
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('plus', 1, 3, 1, 2, 'complex')
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams('plus', GaussianRational(0, 1), GaussianRational(0, -1), 1, 0, 'real')


def test_kk_is_fixed_by_plus_kind():
    a = AutomorphismParams('plus', 2, 3, 4, 2)
    assert transform(a, KK) == KK


@given(seeds, real_automorphisms())
@settings(max_examples=50, deadline=None)
def test_strict_wedges_agree(seed, a):
    k = expand(sample_valid(seed))
    assert transform(a, k, strict=True) == transform(a, k)


@given(seeds, real_automorphisms(kind='plus'), real_automorphisms(kind='plus'))
@settings(max_examples=50, deadline=None)
def test_plus_composition(seed, a1, a2):
    k = expand(sample_valid(seed))
    assert transform(a2, transform(a1, k)) == transform(compose(a1, a2), k)


@given(seeds, real_automorphisms())
@settings(max_examples=50, deadline=None)
def test_real_closure(seed, a):
    src = expand(sample_valid(seed))
    dst = transform(a, src)
    report = evaluate_conditions(dst)
    assert report.is_representation and report.is_definite
    result = find_isomorphism(src, dst, 'real')
    assert isinstance(result, Witness)
    assert transform(result.params, src) == dst
    assert all(value == 0 for value in result.residuals.values())


@given(seeds, complex_automorphisms())
@settings(max_examples=50, deadline=None)
def test_complex_closure(seed, a):
    src = expand(sample_valid(seed))
    dst = transform(a, src)
    report = evaluate_conditions(dst)
    assert report.is_representation and report.is_definite
    result = find_isomorphism(src, dst, 'complex')
    assert isinstance(result, Witness)
    assert result.params.mode == 'complex'
    assert result.params.s in (1, -1)
    assert transform(result.params, src) == dst


def test_complex_witness_with_imaginary_x():
    i = GaussianRational(0, 1)
    a = AutomorphismParams('plus', i, -i, 2, -1, 'complex')
    assert a.r == -1
    src = expand(sample_valid(5))
    dst = transform(a, src)
    result = find_isomorphism(src, dst, 'complex')
    assert isinstance(result, Witness)
    assert transform(result.params, src) == dst


def test_kk_ber_certificate():
    result = find_isomorphism(KK, BER, 'real')
    assert isinstance(result, Infeasible)
    assert list(result.conflicts) == ['plus', 'minus']
    assert result.conflicts['plus'] == ['c_Dz: (1+v)-v = -2', 'd_Cz: (1+v)-v = 0']
    assert result.conflicts['minus'] == ['c_Dz: (1-v)+v = -2', 'd_Cz: (1-v)+v = 0']
    assert result.to_json()['verdict'] == 'infeasible'


def test_ber_kk_certificate_names_fields():
    result = find_isomorphism(BER, KK, 'real')
    assert isinstance(result, Infeasible)
    for kind in ('plus', 'minus'):
        assert result.conflicts[kind] == ['c1_C: 1 = -1', 'd1_D: 1 = -1']
    frame = result.to_frame()
    assert all(text.split(':')[0] in ESSENTIAL_FIELDS for text in frame['constraint'])


@pytest.mark.parametrize('mode', ['real', 'complex'])
def test_verdict_is_symmetric(mode):
    assert isinstance(find_isomorphism(BER, KK, mode), Infeasible)
    assert isinstance(find_isomorphism(KK, BER, mode), Infeasible)


@given(seeds, seeds, real_automorphisms())
@settings(max_examples=25, deadline=None)
def test_verdict_is_symmetric_on_sampled_pairs(seed1, seed2, a):
    k1, k2 = expand(sample_valid(seed1)), expand(sample_valid(seed2))
    forward, backward = find_isomorphism(k1, k2), find_isomorphism(k2, k1)
    assert forward.verdict == backward.verdict
    image = transform(a, k1)
    assert isinstance(find_isomorphism(k1, image), Witness)
    result = find_isomorphism(image, k1)
    assert isinstance(result, Witness)
    assert transform(result.params, image) == k1


def test_quadratic_extension_witness():
    root = sympy.sqrt(2)
    a = AutomorphismParams('plus', root, root, 1, 1)
    assert a.r == 1
    src = expand(sample_valid(9))
    dst = transform(a, src)
    result = find_isomorphism(src, dst, 'real')
    assert isinstance(result, Witness)
    assert result.extension
    assert result.to_json()['extension'] is True


def test_real_orientation_obstruction():
    # r*(u+v) < 0 is not realizable over the reals
    src = expand(sample_valid(9))
    a = AutomorphismParams('plus', GaussianRational(0, 1), GaussianRational(0, 1), 0, -1, 'complex')
    dst = transform(a, src)
    assert dst != src
    assert isinstance(find_isomorphism(src, dst, 'real'), Infeasible)
    assert isinstance(find_isomorphism(src, dst, 'complex'), Witness)


def test_invalid_structures_are_rejected():
    with pytest.raises(NotARepresentation):
        find_isomorphism(StructureConstants.zeros(), BER)
    with pytest.raises(NotARepresentation):
        orbit_tangent_rank(StructureConstants.zeros())


def test_derived_constraints_are_cleared_of_inverse_r():
    constraints = derived_constraints('plus', KK, BER)
    assert [c[0] for c in constraints][:2] == ['c_Dz', 'd_Cz']
    for _, expr, _ in constraints:
        assert expr.is_polynomial(*_UNKNOWNS)
        assert _r not in sympy.denom(sympy.together(expr)).free_symbols


@pytest.mark.parametrize('k, real_rank, complex_rank', [(KK, 0, 0), (BER, 2, 0)])
def test_orbit_rank_at_presets(k, real_rank, complex_rank):
    assert orbit_tangent_rank(k, 'real').rank == real_rank
    assert orbit_tangent_rank(k, 'complex').rank == complex_rank


@pytest.mark.parametrize('seed', range(10))
def test_generic_orbit_rank(seed):
    k = expand(sample_valid(seed))
    assert orbit_tangent_rank(k, 'real').rank == 3
    assert orbit_tangent_rank(k, 'complex').rank == 1
