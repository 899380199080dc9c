"""Catalog of continued-fraction identities for q-metallic numbers and
friends, each checkable by evaluation against an independently computed
series.

Every entry knows how to build its fraction (possibly with a series
remainder in the deepest denominator) and its target series, so
``check(order)`` is a plain coefficient comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .cfrac import (
    CFLayer,
    GeneralizedCFrac,
    IdentityCheck,
    layer,
    metallic_super3,
    periodic,
    verify_identity,
)
from .qreal import angle_bracket, catalan_series, motzkin_series, q_metallic, q_rational, sigma_q
from .series import QPolynomial, TruncatedSeries


@lru_cache(maxsize=None)
def _metallic(n: int, order: int) -> TruncatedSeries:
    return q_metallic(n, order)


def metallic_shift(n: int, ell: int, order: int) -> TruncatedSeries:
    """[y_n]_q with its first ``ell`` coefficients dropped."""
    return _metallic(n, order + ell + 2).drop(ell).truncate(order)


def _G(ell):
    return lambda order: metallic_shift(1, ell, order)


def _S(ell):
    return lambda order: metallic_shift(2, ell, order)


def _B(ell):
    return lambda order: metallic_shift(3, ell, order)


@dataclass(frozen=True)
class Identity:
    name: str
    description: str
    build: Callable  # order -> GeneralizedCFrac
    target: Callable  # order -> TruncatedSeries
    offset: QPolynomial = QPolynomial()

    def check(self, order: int) -> IdentityCheck:
        f = self.target(order)
        if not self.offset.is_zero:
            f = f - self.offset.to_series()
        return verify_identity(self.build(order), f, order)


def _fixed(cf: GeneralizedCFrac):
    return lambda order: cf


def _with_remainder(layers, remainder: Callable, shift: int):
    """Finite fraction whose deepest denominator gets q^shift * remainder."""
    return lambda order: GeneralizedCFrac(layers, remainder=remainder(order).shift(shift))


P = QPolynomial  # coefficient lists from degree 0


def _catalog():
    out = []

    def add(name, description, build, target, offset=QPolynomial()):
        out.append(Identity(name, description, build, target, offset))

    # classical examples
    add("catalan_c_fraction", "C(q) = 1/(1 - q/(1 - q/...))",
        _fixed(periodic([layer(1, 0)], [layer(-1, 1)])), catalan_series)
    add("catalan_shift_j_fraction", "(C(q)-1)/q = 1/(1-2q - q^2/(1-2q - ...))",
        _fixed(periodic([layer(1, 0, 1, -2)], [layer(-1, 2, 1, -2)])),
        lambda order: catalan_series(order + 1).drop(1).truncate(order))
    add("motzkin_c_fraction", "M(q) with numerators q, q, q^2 repeating",
        _fixed(periodic([layer(1, 0)], [layer(-1, 1), layer(-1, 1), layer(-1, 2)])),
        motzkin_series)
    add("motzkin_j_fraction", "M(q) = 1/(1-q - q^2/(1-q - ...))",
        _fixed(periodic([layer(1, 0, 1, -1)], [layer(-1, 2, 1, -1)])), motzkin_series)

    # golden ratio
    add("golden_c_fraction", "G = 1/(1 - q^2/(1 + q/(1 - q^2/(1 + ...))))",
        _fixed(periodic([layer(1, 0)], [layer(-1, 2), layer(1, 1)])), _G(0))
    add("golden_shift2_c_fraction", "G2 with numerators q, q, q^3 repeating",
        _fixed(periodic([layer(1, 0)], [layer(1, 1), layer(1, 1), layer(1, 3)])), _G(2))
    add("golden_shift2_j_fraction", "G2 = 1/(1+q - q^2/(1+q + q^3/(1+q - ...)))",
        _fixed(periodic([layer(1, 0, 1, 1)], [layer(-1, 2, 1, 1), layer(1, 3, 1, 1)])), _G(2))
    add("golden_shift2_super3", "G2 = 1/(1+q-q^2 + q^3/(1+q-q^2 + ...))",
        _fixed(periodic([layer(1, 0, 1, 1, -1)], [layer(1, 3, 1, 1, -1)])), _G(2))
    add("golden_minus_fraction", "G = 1+q - q/(1+q+q^2 - q^2/(1+q+q^2 - ...))",
        _fixed(periodic([layer(-1, 1, 1, 1, 1)], [layer(-1, 2, 1, 1, 1)])), _G(0), P([1, 1]))
    gold_h = [layer(-1, 2, 1, 1), layer(1, 3, 1, 1, -1), layer(1, 3, 1, 1)]
    add("golden_shift2_h_fraction", "3-periodic H-fraction of G2",
        _fixed(periodic([layer(1, 0, 1, 1)], gold_h)), _G(2))
    add("golden_h_fraction", "H-fraction of G, 3-periodic from the second layer",
        _fixed(periodic([layer(1, 0)], gold_h)), _G(0))
    # the display's value starts with +1 while (G-1-q^2)/q^3 starts with -1
    add("golden_shift3_h_fraction", "2-periodic H-fraction of -G3, G3 = (G-1-q^2)/q^3",
        _fixed(periodic([layer(1, 0, 1, 2)],
                        [layer(-1, 4, 1, 1, -1, 2), layer(-1, 4, 1, 2)])),
        lambda order: -metallic_shift(1, 3, order))

    # silver ratio
    add("silver_minus_fraction", "S = [3] - q^2/(1+q - q/([4] - q^3/(1+q - ...)))",
        _fixed(periodic([layer(-1, 2, 1, 1)], [layer(-1, 1, 1, 1, 1, 1), layer(-1, 3, 1, 1)])),
        _S(0), P([1, 1, 1]))
    add("silver_shift4_super3", "S4 = 1/(1+2q^2-q^3 + q^5/(...))",
        _fixed(periodic([layer(1, 0, 1, 0, 2, -1)], [layer(1, 5, 1, 0, 2, -1)])), _S(4))
    silver_period = [layer(-1, 3, 1, 0, 2), layer(1, 5, 1, 0, 2, -1), layer(1, 5, 1, 0, 2),
                     layer(-1, 3), layer(1, 2), layer(1, 2, 1, 1), layer(1, 2), layer(1, 2)]
    add("silver_shift1_h_fraction", "8-periodic H-fraction of S1 = (S-1)/q",
        _fixed(periodic([layer(1, 0)], silver_period)), _S(1))
    add("silver_shift1_closed", "S1 = 1/(1 - q^3/(... + q^2/(1 + q^2 S1)))",
        _with_remainder([layer(1, 0)] + silver_period[:7], _S(1), 2), _S(1))
    add("silver_shift1_via_shift3", "S1 = 1/(1 - q^3/(1+2q^2 + q^5/(1+2q^2-q^3 + q^4 S3)))",
        _with_remainder([layer(1, 0), layer(-1, 3, 1, 0, 2), layer(1, 5, 1, 0, 2, -1)], _S(3), 4),
        _S(1))
    add("silver_shift1_self", "S1 = 1/(1 - q^3/(1+2q^2 + q^5/(1+q^2-q^3 + q^2 S1)))",
        _with_remainder([layer(1, 0), layer(-1, 3, 1, 0, 2), layer(1, 5, 1, 0, 1, -1)], _S(1), 2),
        _S(1))
    add("silver_shift3_via_shift1",
        "S3 = q/(1+2q^2 - q^3/(1 + q^2/(1 + q^2/(1+q + q^2/(1 + q^2 S1)))))",
        _with_remainder([layer(1, 1, 1, 0, 2), layer(-1, 3), layer(1, 2), layer(1, 2, 1, 1),
                         layer(1, 2)], _S(1), 2),
        _S(3))
    add("silver_from_shift1", "S = 1/(1-q + q^2/(1+q + q^2/(1 + q^2 S1)))",
        _with_remainder([layer(1, 0, 1, -1), layer(1, 2, 1, 1), layer(1, 2)], _S(1), 2), _S(0))
    add("silver_shift2_complement", "1 - S2 = 1/(1 + q^2/(1+q^2 - q^3/(1 + ...)))",
        _fixed(periodic([layer(1, 0)], [layer(1, 2, 1, 0, 1), layer(-1, 3)])),
        lambda order: TruncatedSeries.one() - metallic_shift(2, 2, order))
    add("silver_shift2_glide", "q^3 S2 as a 13-periodic C-fraction",
        _fixed(GeneralizedCFrac(
            [CFLayer(c, e) for c, e in [
                (1, 5), (2, 2), (Fraction(1, 2), 1), (Fraction(-1, 2), 1), (2, 1), (-2, 1),
                (Fraction(1, 2), 1), (Fraction(1, 2), 1), (-2, 1), (2, 1), (Fraction(-1, 2), 1),
                (Fraction(1, 2), 1), (2, 2)]], 0, 13)),
        lambda order: metallic_shift(2, 2, order).shift(3).truncate(order))

    # bronze ratio
    add("bronze_shift1", "B1 = 1/(1-q + q^2/(1+q + q^3/(1 + q^2 B1)))",
        _with_remainder([layer(1, 0, 1, -1), layer(1, 2, 1, 1), layer(1, 3)], _B(1), 2), _B(1))
    add("bronze_shift1_via_shift2", "B1 = 1/(1-q + q^2/(1+q + q^3/(1+q^2 + q^3 B2)))",
        _with_remainder([layer(1, 0, 1, -1), layer(1, 2, 1, 1), layer(1, 3, 1, 0, 1)], _B(2), 3),
        _B(1))

    # the metallic family
    for n in range(1, 9):
        add(f"metallic_{n}_super3", f"sigma_q(y_{n}) = q^{n - 1}/(<{n}> + q^{2 * n + 1}/(...))",
            _fixed(metallic_super3(n)),
            (lambda n: lambda order: sigma_q(_metallic(n, order + n + 2), n).truncate(order))(n))
        den = angle_bracket(n)
        add(f"metallic_{n}_offset", f"[y_{n}] = [{n}] + q^{2 * n}/(<{n}> + q^{2 * n + 1}/(...))",
            _fixed(periodic([CFLayer(1, 2 * n, den)], [CFLayer(1, 2 * n + 1, den)])),
            (lambda n: lambda order: _metallic(n, order))(n), QPolynomial.q_integer(n))

    # q-integers, reciprocals and two q-rationals
    for n in range(2, 13):
        add(f"q_integer_{n}", f"C-fraction of [{n}]_q",
            _fixed(q_integer_fraction(n)),
            (lambda n: lambda order: q_rational(n).to_series(order))(n))
        add(f"q_reciprocal_{n}", f"C-fraction of [1/{n}]_q",
            _fixed(q_reciprocal_fraction(n)),
            (lambda n: lambda order: q_rational(Fraction(1, n)).to_series(order))(n))
    for n, cf in [(3, GeneralizedCFrac([layer(1, 0), layer(-1, 1), layer(1, 2, 1, 1)])),
                  (4, GeneralizedCFrac([layer(1, 0), layer(-1, 1), layer(1, 3), layer(1, 1),
                                        layer(-1, 1, 1, 1)])),
                  (5, GeneralizedCFrac([layer(1, 0), layer(-1, 1), layer(1, 4), layer(1, 1),
                                        layer(-1, 1), layer(1, 2, 1, 1)]))]:
        add(f"q_integer_{n}_display", f"[{n}]_q with the last level written as 1+q",
            _fixed(cf), (lambda n: lambda order: q_rational(n).to_series(order))(n))
    half = Fraction(1, 2)
    add("q_rational_2_5", "[2/5] = q^2/(1 + 2q^2/(1 + (q/2)/(1 + q/2)))",
        _fixed(GeneralizedCFrac([layer(1, 2), layer(2, 2), CFLayer(half, 1, P([1, half]))])),
        lambda order: q_rational(Fraction(2, 5)).to_series(order))
    add("q_rational_3_5", "[3/5] = q/(1 + q/(1 + q/(1 + q^2)))",
        _fixed(GeneralizedCFrac([layer(1, 1), layer(1, 1), layer(1, 1, 1, 0, 1)])),
        lambda order: q_rational(Fraction(3, 5)).to_series(order))
    return out


def q_integer_fraction(n: int) -> GeneralizedCFrac:
    """[n]_q = 1/(1 - q/(1 + q^(n-1)/(1 + q/(1 - q/(1 + q^(n-3)/(...)))))).

    Blocks (-q, q^(n-1-2j), q) while the middle exponent is >= 1; for even
    n the trailing q of the last block is dropped."""
    if n < 2:
        raise ValueError("n must be >= 2")
    nums = [(1, 0)]
    j = 0
    while n - 1 - 2 * j >= 1:
        nums += [(-1, 1), (1, n - 1 - 2 * j), (1, 1)]
        j += 1
    if n % 2 == 0:
        nums.pop()
    return GeneralizedCFrac([CFLayer(c, e) for c, e in nums])


def q_reciprocal_fraction(n: int) -> GeneralizedCFrac:
    """[1/n]_q = q^(n-1)/(1 + q/(1 - q/(1 + q^(n-2)/(1 + q/(1 - q/(...))))))."""
    if n < 2:
        raise ValueError("n must be >= 2")
    nums = [(1, n - 1)]
    j = 0
    while n - 2 - 2 * j >= 1:
        nums += [(1, 1), (-1, 1), (1, n - 2 - 2 * j)]
        j += 1
    if n % 2 == 0:
        nums.append((1, 1))
    return GeneralizedCFrac([CFLayer(c, e) for c, e in nums])


CATALOG = tuple(_catalog())


def by_name(name: str) -> Identity:
    for ident in CATALOG:
        if ident.name == name:
            return ident
    raise KeyError(name)
