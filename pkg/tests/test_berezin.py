from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superlab import settings as config
from superlab.algebra import C_STAR, C_WEDGE_D, D_STAR, EPS, GrassmannElement
from superlab.berezin import (ContinuedFunction, NotDecomposable, ParityError, SuperMatrix, action_list,
                              compare_conventions, continue_eval, decompose, derive_ber, even_derivative,
                              exp_odd, odd_derivative, sample_element, smat_mul)
from superlab.derivations import BER, KK, StructureConstants

from conftest import nonzero_fractions, small_fractions

POINTS = [(0, 0), (1, 0), (0, 1), (2, -3), (-1, 4)]
SAMPLES = [sample_element(sample) for sample in config.BEREZIN_SAMPLES]


def _odd(c_C, c_D, d_C, d_D):
    return SuperMatrix.odd(GrassmannElement.from_components(c_star=c_C, d_star=c_D),
                           GrassmannElement.from_components(c_star=d_C, d_star=d_D))


@st.composite
def group_elements(draw):
    coordinates = dict(a1=draw(nonzero_fractions), a_w=draw(small_fractions), b1=draw(nonzero_fractions),
                       b_w=draw(small_fractions), c_C=draw(small_fractions), c_D=draw(small_fractions),
                       d_C=draw(small_fractions), d_D=draw(small_fractions))
    convention = draw(st.sampled_from(config.QUADRATIC_CONVENTIONS))
    return SuperMatrix.from_coordinates(convention=convention, **coordinates), convention


def test_odd_product_is_diagonal_wedge():
    N = _odd(1, 2, 3, 4)
    square = smat_mul(N, N)
    assert square[0, 1] == 0 and square[1, 0] == 0
    # c*d = (c_C d_D - c_D d_C) C*^D*
    assert square[0, 0] == C_WEDGE_D * (1*4 - 2*3)
    assert square[1, 1] == C_WEDGE_D * (3*2 - 4*1)
    assert smat_mul(N, SuperMatrix.identity()) == N


def test_parity_is_checked():
    with pytest.raises(ParityError):
        SuperMatrix(((C_STAR, 0), (0, 1)))
    with pytest.raises(ParityError):
        exp_odd(SuperMatrix.identity())


def test_exp_odd():
    assert exp_odd(_odd(0, 0, 0, 0)) == SuperMatrix.identity()
    N = _odd(1, 0, 0, 0)
    assert exp_odd(N) == SuperMatrix.identity() + N
    M = _odd(1, Fraction(1, 2), -2, 3)
    assert exp_odd(M) * exp_odd(-M) == SuperMatrix.identity()


def test_exp_odd_with_eps():
    N = SuperMatrix.odd(C_STAR + EPS, D_STAR)
    cube = N * N * N
    assert all(not entry for row in cube.entries for entry in row)


@given(group_elements())
@settings(max_examples=100, deadline=None)
def test_decompose_round_trip(element):
    g, convention = element
    assert decompose(g, convention).recompose(convention) == g


def test_decompose_coordinates():
    coordinates = dict(a1=Fraction(2), a_w=Fraction(1, 3), b1=Fraction(-1), b_w=Fraction(0),
                       c_C=Fraction(1), c_D=Fraction(0), d_C=Fraction(2), d_D=Fraction(-1))
    g = SuperMatrix.from_coordinates(convention='series', **coordinates)
    assert decompose(g, 'series').coordinates() == coordinates
    assert decompose(SuperMatrix.identity()).coordinates()['a1'] == 1


def test_not_decomposable():
    with pytest.raises(NotDecomposable):
        decompose(SuperMatrix(((C_WEDGE_D, 0), (0, 1))))


def test_continue_eval_examples():
    assert continue_eval(ContinuedFunction(1, 0, '1'), SuperMatrix.identity()) == 1
    N = _odd(2, -1, Fraction(1, 2), 3)
    for n, m in POINTS:
        assert continue_eval(ContinuedFunction(n, m, 'C*'), exp_odd(N, 'doubled'), 'doubled') == \
            C_STAR*2 - D_STAR
    g = SAMPLES[0]
    parts = decompose(g)
    expected = (parts.c * parts.d).coeff(3) * parts.p.body * parts.q.body
    assert continue_eval(ContinuedFunction(1, 1, 'C*^D*'), g) == C_WEDGE_D * expected


@pytest.mark.parametrize('g', SAMPLES)
@pytest.mark.parametrize('n, m', POINTS)
def test_berezin_action_list(g, n, m):
    def F(form, dn=0, dm=0):
        return continue_eval(ContinuedFunction(n + dn, m + dm, form), g).eps_free()

    def d(tag, form):
        return odd_derivative(ContinuedFunction(n, m, form), tag, g)

    assert d('C', '1') == F('D*') * n
    assert d('C', 'C*') == F('1') + F('C*^D*') * n
    assert d('C', 'D*') == 0
    assert d('C', 'C*^D*') == -F('D*')
    assert d('D', '1') == F('C*') * m
    assert d('D', 'C*') == 0
    assert d('D', 'D*') == F('1') - F('C*^D*') * m
    assert d('D', 'C*^D*') == F('C*')


def test_left_extraction_signs():
    g = SAMPLES[1]
    F = ContinuedFunction(1, 0, '1')
    right = odd_derivative(F, 'C', g, side='right')
    left = odd_derivative(F, 'C', g, side='left')
    assert left == -right


@pytest.mark.parametrize('g', SAMPLES[:2])
def test_even_derivative(g):
    for n, m in POINTS:
        F1 = ContinuedFunction(n, m, '1')
        assert even_derivative(F1, 'A', g) == continue_eval(F1, g).eps_free() * n
        assert even_derivative(F1, 'B', g) == continue_eval(F1, g).eps_free() * m
    FC = ContinuedFunction(0, 0, 'C*')
    assert even_derivative(FC, 'A', g) == -continue_eval(FC, g).eps_free()
    assert even_derivative(FC, 'B', g) == continue_eval(FC, g).eps_free()
    assert even_derivative(ContinuedFunction(0, 0, 'C*^D*'), 'A', g) == 0
    with pytest.raises(ValueError):
        even_derivative(FC, 'C', g)


def test_derive_ber():
    assert derive_ber() == BER


def test_series_convention_negates_kk():
    tables = compare_conventions()
    assert list(tables) == ['doubled', 'series']
    assert tables['doubled'] == BER
    negated = StructureConstants(*[-value for value in KK])
    assert tables['series'] == negated


def test_action_list():
    assert action_list() == [
        'C.F[n,m,1] = (n)*F[n,m,D*]',
        'C.F[n,m,C*] = (1)*F[n,m,1] + (n)*F[n,m,C*^D*]',
        'C.F[n,m,D*] = 0',
        'C.F[n,m,C*^D*] = (-1)*F[n,m,D*]',
        'D.F[n,m,1] = (m)*F[n,m,C*]',
        'D.F[n,m,C*] = 0',
        'D.F[n,m,D*] = (1)*F[n,m,1] + (-m)*F[n,m,C*^D*]',
        'D.F[n,m,C*^D*] = (1)*F[n,m,C*]',
    ]
