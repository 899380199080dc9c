from fractions import Fraction

import pytest

from qreals.cfrac import (
    CFLayer,
    CFracError,
    GeneralizedCFrac,
    NonContractingError,
    c_expand,
    c_fraction,
    delta_profile,
    evaluate,
    evaluate_exact,
    find_glide,
    find_period,
    layer,
    metallic_super3,
    periodic,
    render,
    super_delta_expand,
    verify_identity,
)
from qreals.identities import by_name, q_integer_fraction, q_reciprocal_fraction
from qreals.qreal import angle_bracket, q_integer, q_metallic, q_rational, sigma_q
from qreals.series import InsufficientOrderError, QPolynomial, TruncatedSeries
from reference_values import CATALAN, GOLDEN, MOTZKIN

CATALAN_CF = periodic([layer(1, 0)], [layer(-1, 1)])
MOTZKIN_CF = periodic([layer(1, 0, 1, -1)], [layer(-1, 2, 1, -1)])


def G(order, shift=0):
    return q_metallic(1, order + shift + 2).drop(shift).truncate(order)


def S(order, shift=0):
    return q_metallic(2, order + shift + 2).drop(shift).truncate(order)


# -- data model ------------------------------------------------------------------

def test_layer_invariants():
    with pytest.raises(CFracError):
        CFLayer(0, 1)
    with pytest.raises(CFracError):
        CFLayer(1, 1, QPolynomial([2, 1]))
    with pytest.raises(CFracError):
        CFLayer(1, -1)


def test_periodic_layout():
    cf = periodic([layer(1, 0)], [layer(2, 1), layer(3, 2)])
    assert cf.preperiod == 1 and cf.period == 2
    assert cf.layer(4).coeff == 3 and cf.layer(5).coeff == 2
    with pytest.raises(CFracError):
        GeneralizedCFrac([layer(1, 0), layer(1, 1)], 0, 3)


def test_json_round_trip_and_schema():
    cf = by_name("silver_shift1_h_fraction").build(10)
    obj = cf.to_json()
    assert set(obj) == {"head", "layers", "tail"}
    assert obj["tail"] == {"kind": "periodic", "preperiod": cf.preperiod, "period": cf.period}
    assert GeneralizedCFrac.from_json(cf.dumps()) == cf


def test_render_linear_form():
    cf = c_fraction([(1, 2), (2, 2), (Fraction(1, 2), 1), (Fraction(1, 2), 1)])
    assert render(cf) == "q^2 / (1 + 2*q^2 / (1 + 1/2*q / (1 + 1/2*q / (1))))"
    assert render(CATALAN_CF, 3) == "1 / (1 - q / (1 - q / (1 + ...)))"


# -- evaluate --------------------------------------------------------------------

def test_evaluate_catalan():
    assert evaluate(CATALAN_CF, 6).coefficients(0, 6) == CATALAN


def test_evaluate_motzkin():
    assert evaluate(MOTZKIN_CF, 7).coefficients(0, 7) == MOTZKIN


def test_evaluate_golden_two_periodic():
    cf = by_name("golden_c_fraction").build(20)
    assert evaluate(cf, 21).coefficients(0, 21) == GOLDEN


def test_evaluate_exact_finite():
    assert evaluate_exact(q_integer_fraction(3)) == q_integer(3)


def test_evaluate_rejects_non_contracting():
    with pytest.raises(NonContractingError):
        evaluate(c_fraction([(1, 0), (1, 0)]), 5)


# -- c_expand ----------------------------------------------------------------------

def test_c_expand_catalan():
    from qreals.qreal import catalan_series
    cf = c_expand(catalan_series(30), 20)
    assert all((L.coeff, L.exponent) == (-1, 1) for L in cf.layers[1:])


def test_c_expand_q_integer_matches_display():
    cf = c_expand(QPolynomial.q_integer(3).to_series(40))
    assert cf.layers == q_integer_fraction(3).layers


def test_c_expand_q_rational_terminates():
    cf = c_expand(q_rational(Fraction(2, 5)).to_series(40))
    assert [(L.coeff, L.exponent) for L in cf.layers] == \
        [(1, 2), (2, 2), (Fraction(1, 2), 1), (Fraction(1, 2), 1)]


def test_c_expand_silver_shift2_stream():
    f = S(200, 2).shift(3)
    cf = c_expand(f, 40)
    head = [(L.coeff, L.exponent) for L in cf.layers[:8]]
    assert head == [(1, 5), (2, 2), (Fraction(1, 2), 1), (Fraction(-1, 2), 1), (2, 1), (-2, 1),
                    (Fraction(1, 2), 1), (Fraction(1, 2), 1)]
    for i in range(27):
        assert cf.layers[i] == cf.layers[i + 13]
    assert find_period(cf.layers) == (0, 13)
    assert find_glide(cf.layers) == 7


def test_expand_insufficient_order_reports_layer():
    with pytest.raises(InsufficientOrderError, match="stuck at layer 2"):
        super_delta_expand(G(7, 2), 3, 40)


def test_c_expand_short_series_stops_gracefully():
    cf = c_expand(G(6))
    assert cf.certified_order == 6
    assert verify_identity(cf, G(6), 6)


def test_c_expand_certified_order():
    cf = c_expand(G(30))
    assert cf.certified_order <= 30
    assert verify_identity(cf, G(30), cf.certified_order)


# -- super delta --------------------------------------------------------------------

def test_golden_h_fraction_profile():
    cf, prof = super_delta_expand(G(120, 2), 2, 30)
    assert prof.k_sequence[:6] == (0, 0, 1, 0, 0, 1)
    assert prof.v_sequence[:7] == (1, 1, -1, -1, 1, -1, -1)
    # denominators 1 + q U with U = 1, 1, 1 - q, ...
    assert [L.denominator for L in cf.layers[:3]] == \
        [QPolynomial([1, 1]), QPolynomial([1, 1]), QPolynomial([1, 1, -1])]
    for i in range(1, 27):
        assert cf.layers[i] == cf.layers[i + 3]


def test_golden_super3_is_one_periodic():
    cf, prof = super_delta_expand(G(120, 2), 3, 30)
    assert all(L.denominator == QPolynomial([1, 1, -1]) for L in cf.layers)
    assert all(L == cf.layers[1] for L in cf.layers[1:])
    assert set(prof.k_sequence) == {0}


def test_silver_shift1_h_fraction_profile():
    cf, prof = super_delta_expand(S(200, 1), 2, 40)
    assert prof.k_sequence[:8] == (0, 1, 2, 1, 0, 0, 0, 0)
    assert prof.v_sequence[:8] == (1, 1, -1, -1, 1, -1, -1, -1)
    assert prof.degree_bounds_ok
    for i in range(1, 30):
        assert cf.layers[i] == cf.layers[i + 8]


def test_delta_profile_recomputed_from_layers():
    cf, prof = super_delta_expand(G(120, 2), 2, 12)
    again = delta_profile(cf, 2)
    assert again.k_sequence == prof.k_sequence and again.v_sequence == prof.v_sequence


def test_degree_bound_violation_is_detected():
    # delta = 1 and k_0 = 0 allow a constant denominator only
    cf = GeneralizedCFrac([layer(1, 0, 1, 1, 1), layer(-1, 3)])
    assert not delta_profile(cf, 1).degree_bounds_ok
    assert delta_profile(cf, 3).degree_bounds_ok


# -- metallic super 3-fractions -------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_metallic_super3(n):
    cf = metallic_super3(n)
    assert cf.head.exponent == n - 1
    assert all(L.denominator == angle_bracket(n) for L in cf.layers)
    assert all(L.exponent == 2 * n + 1 for L in cf.layers[1:])
    target = sigma_q(q_metallic(n, 60), n)
    assert verify_identity(cf, target, 40)


def test_metallic_super3_denominators():
    assert metallic_super3(1).head.denominator == QPolynomial([1, 1, -1])
    assert metallic_super3(2).head.denominator == QPolynomial([1, 0, 2, -1])
    assert metallic_super3(3).head.denominator == QPolynomial([1, 0, 1, 2, -1])


# -- verify_identity ---------------------------------------------------------------------

def test_verify_golden_c_fraction():
    assert verify_identity(by_name("golden_c_fraction").build(40), G(40), 40)


def test_verify_reciprocal_three():
    assert verify_identity(q_reciprocal_fraction(3), q_rational(Fraction(1, 3)), 40)


def test_verify_negative_control_reports_mismatch():
    good = by_name("golden_c_fraction").build(40)
    layers = list(good.layers)
    layers[2] = CFLayer(layers[2].coeff + 1, layers[2].exponent, layers[2].denominator)
    bad = GeneralizedCFrac(layers, good.preperiod, good.period)
    check = verify_identity(bad, G(40), 40)
    assert not check and check.first_mismatch is not None
    assert check.first_mismatch == sum(L.exponent for L in layers[:3])


def test_verify_needs_enough_order():
    with pytest.raises(InsufficientOrderError):
        verify_identity(CATALAN_CF, TruncatedSeries.from_coefficients(CATALAN, 0, 6), 10)
