from fractions import Fraction

import pytest

import oracles
from qreals.qreal import q_metallic
from qreals.series import (
    INF,
    IllPosedError,
    InsufficientOrderError,
    QPolynomial,
    SeriesError,
    TruncatedSeries,
    ZeroSeriesError,
    add,
    coeff,
    equal_to_order,
    first_difference,
    invert,
    mul,
    shift_div,
    solve_quadratic_functional,
)
from reference_values import BRONZE, GOLDEN, SILVER


def S(coeffs, valuation=0, order=None):
    return TruncatedSeries.from_coefficients(coeffs, valuation, order)


def golden(order):
    return solve_quadratic_functional([0, 1], [1, -1, -1], [1], order)


# -- coefficients and polynomials ---------------------------------------------

def test_coefficients_are_reduced_and_integral_when_possible():
    assert coeff(Fraction(4, 2)) == 2 and type(coeff(Fraction(4, 2))) is int
    c = coeff(Fraction(6, -4))
    assert c == Fraction(-3, 2) and c.denominator == 2


def test_q_polynomial_basics():
    p = QPolynomial.q_integer(3)
    assert p.coeffs == (1, 1, 1) and p.degree == 2
    assert QPolynomial().is_zero and QPolynomial().degree == -1
    assert QPolynomial([1, 2, 0, 0]).degree == 1
    assert (QPolynomial([1, 1]) * QPolynomial([1, -1])).coeffs == (1, 0, -1)


# -- add ---------------------------------------------------------------------

def test_add_simple():
    r = add(S([1, 1], order=3), S([0, 1, -1], order=3))
    assert r.coefficients(0, 3) == [1, 2, -1] and r.order == 3


def test_add_zero_is_identity():
    a = S([3, 0, -2], order=5)
    assert add(a, TruncatedSeries.zero()) == a


def test_add_q_integer_and_shifted_golden():
    G = golden(30)
    G2 = shift_div(G - 1, 2)
    r = add(QPolynomial.q_integer(2).to_series(), G2.shift(2)) - QPolynomial([0, 1]).to_series()
    # [2]_q + q^2 G2 - q reproduces G; the q term of [2]_q is not part of G
    assert r.coefficients(0, 21) == GOLDEN


def test_add_order_is_minimum():
    assert add(S([1], order=4), S([1], order=7)).order == 4


# -- mul ---------------------------------------------------------------------

def test_mul_difference_of_squares():
    r = mul(QPolynomial([1, 1]).to_series(), QPolynomial([1, -1]).to_series())
    assert r.is_exact and r.to_polynomial().coeffs == (1, 0, -1)


def test_mul_laurent_cancellation():
    r = mul(TruncatedSeries.monomial(-1), TruncatedSeries.monomial(1))
    assert r == TruncatedSeries.one()


def test_mul_functional_equation_to_order_6():
    G = golden(6)
    q = TruncatedSeries.monomial(1)
    lhs = q * G * G + QPolynomial([1, -1, -1]).to_series() * G
    assert lhs.order == 6
    assert equal_to_order(lhs, TruncatedSeries.one(), 6)


def test_mul_order_rule():
    a = S([1, 2], valuation=1, order=5)
    b = S([3], valuation=2, order=6)
    assert mul(a, b).order == min(5 + 2, 6 + 1)


# -- invert ------------------------------------------------------------------

def test_invert_geometric():
    r = invert(QPolynomial([1, -1]).to_series(), order=10)
    assert r.coefficients(0, 10) == [1] * 10


def test_invert_monomial():
    r = invert(TruncatedSeries.monomial(1))
    assert r == TruncatedSeries.monomial(-1)


def test_invert_one_plus_q_golden():
    G = golden(30)
    one_plus = TruncatedSeries.one() + TruncatedSeries.monomial(1) * G
    F1 = invert(one_plus)
    assert equal_to_order(one_plus * F1, TruncatedSeries.one(), 28)


def test_invert_zero_raises():
    with pytest.raises(ZeroSeriesError):
        invert(TruncatedSeries.zero(5))


# -- shift_div ---------------------------------------------------------------

def test_shift_div_golden():
    G2 = shift_div(golden(30) - 1, 2)
    assert G2.coefficients(0, 5) == [1, -1, 2, -4, 8]


def test_shift_div_silver():
    Sv = q_metallic(2, 30)
    S4 = shift_div(Sv - QPolynomial([1, 1]).to_series(), 4)
    assert S4.coefficients(0, 6) == [1, 0, -2, 1, 4, -5]


def test_shift_div_zero_is_identity():
    a = S([1, 2, 3], order=7)
    assert shift_div(a, 0) == a


def test_shift_div_may_go_laurent():
    r = shift_div(S([1, 1], order=4), 2)
    assert r.valuation == -2 and r.order == 2


# -- solve_quadratic_functional -------------------------------------------------

def test_solve_golden():
    assert golden(21).coefficients(0, 21) == GOLDEN


def test_solve_silver():
    f = solve_quadratic_functional([0, 1], [1, -2, 0, -1], [1], 22)
    assert f.coefficients(0, 22) == SILVER


def test_solve_bronze():
    f = solve_quadratic_functional([0, 1], [1, -2, -1, 0, -1], [1], 23)
    assert f.coefficients(0, 23) == BRONZE


def test_solve_satisfies_relation():
    A, B, C = QPolynomial([0, 0, 2]), QPolynomial([3, 1]), QPolynomial([1, 5])
    f = solve_quadratic_functional(A, B, C, 20)
    lhs = A.to_series() * f * f + B.to_series() * f
    assert equal_to_order(lhs, C.to_series(), 20 - 2)


def test_solve_ill_posed():
    with pytest.raises(IllPosedError):
        solve_quadratic_functional([0, 1], [0, 1], [1], 5)
    with pytest.raises(IllPosedError):
        solve_quadratic_functional([1], [1], [1], 5)


# -- equal_to_order ------------------------------------------------------------

def test_golden_against_closed_form_root():
    expected = oracles.golden_closed_form(20)
    assert equal_to_order(golden(20), S(expected, order=20), 20)


def test_equal_to_self():
    a = S([1, 2, 3], order=3)
    assert equal_to_order(a, a, 3)


def test_golden_and_silver_differ_at_q1():
    assert not equal_to_order(golden(10), q_metallic(2, 10), 10)
    assert first_difference(golden(10), q_metallic(2, 10), 10) == 1


def test_comparison_beyond_order_raises():
    with pytest.raises(InsufficientOrderError):
        equal_to_order(S([1], order=3), S([1], order=10), 5)


# -- conventions and serialization ---------------------------------------------

def test_zero_series_sentinel():
    z = TruncatedSeries.zero(7)
    assert z.is_zero() and z.valuation == 7
    assert (z + z).is_zero() and (z * S([1, 1], order=7)).is_zero()


def test_exact_polynomials_have_infinite_order():
    assert QPolynomial([1, 1]).to_series().order == INF


def test_bfile_and_json_round_trip():
    f = S([Fraction(1, 2), 0, -3], valuation=-1, order=4)
    assert TruncatedSeries.from_json(f.dumps()) == f
    g = golden(6)
    assert g.to_bfile() == "0 1\n1 0\n2 1\n3 -1\n4 2\n5 -4\n"
    assert TruncatedSeries.from_bfile(g.to_bfile()) == g


def test_assert_integral():
    assert golden(10).assert_integral() is not None
    with pytest.raises(SeriesError):
        S([Fraction(1, 2)], order=2).assert_integral()


def test_results_do_not_depend_on_gmp(monkeypatch):
    import qreals.series as series_module
    f = S([3, Fraction(-1, 7), 2, 5, Fraction(9, 4)], order=12)
    fast_inv, fast_sq = invert(f), f * f
    monkeypatch.setattr(series_module, "gmpy2", None)
    assert invert(f) == fast_inv and f * f == fast_sq
    assert all(type(c) in (int, Fraction) for c in fast_inv.coeffs)
