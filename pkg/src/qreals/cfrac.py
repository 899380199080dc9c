"""Generalized continued fractions: C-, J- and super delta-fractions.

A fraction is stored as a list of layers.  Layer i holds a monomial
numerator N_i = c_i q^(e_i) and the polynomial D_(i+1) sitting directly
beneath it, so the value is

    N_0 / (D_1 + N_1 / (D_2 + N_2 / (D_3 + ...)))

Signs always live in the coefficients; rendering uses "+" throughout.
Every denominator has constant term 1 and every numerator after the head
has exponent >= 1, so each level gains at least one order of accuracy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .qreal import QPolynomialFraction, angle_bracket
from .series import (
    INF,
    InsufficientOrderError,
    QPolynomial,
    SeriesError,
    TruncatedSeries,
    coeff,
    first_difference,
    format_poly,
    invert,
)


class CFracError(SeriesError):
    pass


class NonContractingError(CFracError):
    """A numerator past the head has exponent 0."""


class DegreeBoundError(CFracError):
    """A super delta-fraction denominator exceeds its degree bound."""


ONE = QPolynomial([1])


@dataclass(frozen=True)
class CFLayer:
    coeff: object
    exponent: int
    denominator: QPolynomial = ONE

    def __post_init__(self):
        c = coeff(self.coeff)
        if c == 0:
            raise CFracError("layer numerator coefficient must be nonzero")
        if self.exponent < 0:
            raise CFracError("layer numerator exponent must be >= 0")
        d = self.denominator
        if not isinstance(d, QPolynomial):
            d = QPolynomial(d)
        if d[0] != 1:
            raise CFracError(f"denominator {d} must have constant term 1")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "denominator", d)

    @property
    def numerator(self) -> QPolynomial:
        return QPolynomial.monomial(self.exponent, self.coeff)

    def to_json(self):
        return {"coeff": str(self.coeff), "exp": self.exponent,
                "denom": [str(c) for c in self.denominator.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(Fraction(obj["coeff"]), int(obj["exp"]),
                   QPolynomial(Fraction(c) for c in obj.get("denom", ["1"])))


def layer(c, e, *denominator) -> CFLayer:
    """Shorthand: ``layer(-1, 2, 1, 1)`` is -q^2 over 1 + q."""
    return CFLayer(c, e, QPolynomial(denominator) if denominator else ONE)


@dataclass(frozen=True)
class GeneralizedCFrac:
    """Layers plus an optional eventual period over layer indices.

    A periodic fraction lists exactly ``preperiod + period`` layers.  A
    finite one may carry a ``remainder`` series added to the deepest
    denominator (for displays ending in something like 1 + q^2 S(q)).
    ``certified_order`` is set by the expansion routines: the fraction
    equals its source below that exponent.
    """

    layers: tuple
    preperiod: Optional[int] = None
    period: Optional[int] = None
    remainder: Optional[TruncatedSeries] = None
    certified_order: object = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise CFracError("a continued fraction needs at least a head layer")
        if (self.preperiod is None) != (self.period is None):
            raise CFracError("preperiod and period go together")
        if self.period is not None:
            if self.period < 1 or self.preperiod < 0:
                raise CFracError("period must be >= 1 and preperiod >= 0")
            if len(self.layers) != self.preperiod + self.period:
                raise CFracError("periodic fraction must list preperiod + one period of layers")
            if self.remainder is not None:
                raise CFracError("periodic fractions take no remainder")

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def head(self) -> CFLayer:
        return self.layers[0]

    @property
    def leading_coeff(self):
        return self.layers[0].coeff

    @property
    def leading_exponent(self) -> int:
        return self.layers[0].exponent

    def layer(self, i: int) -> CFLayer:
        if i < len(self.layers):
            return self.layers[i]
        if not self.is_periodic:
            raise IndexError(f"finite fraction has {len(self.layers)} layers")
        m, p = self.preperiod, self.period
        return self.layers[m + (i - m) % p]

    def unrolled(self, count: int) -> list:
        if not self.is_periodic:
            return list(self.layers[:count])
        return [self.layer(i) for i in range(count)]

    def __len__(self):
        return len(self.layers)

    def __str__(self):
        return render(self)

    def to_json(self):
        tail = {"kind": "finite"}
        if self.is_periodic:
            tail = {"kind": "periodic", "preperiod": self.preperiod, "period": self.period}
        h = self.head
        return {
            "head": {"coeff": str(h.coeff), "exp": h.exponent,
                     "denom": [str(c) for c in h.denominator.coeffs]},
            "layers": [L.to_json() for L in self.layers[1:]],
            "tail": tail,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        layers = [CFLayer.from_json(obj["head"])] + [CFLayer.from_json(x) for x in obj["layers"]]
        tail = obj.get("tail", {"kind": "finite"})
        if tail["kind"] == "periodic":
            return cls(layers, tail["preperiod"], tail["period"])
        return cls(layers)


def c_fraction(numerators: Sequence, preperiod=None, period=None) -> GeneralizedCFrac:
    """Build a C-fraction from (coeff, exponent) pairs; all denominators 1."""
    return GeneralizedCFrac([CFLayer(c, e) for c, e in numerators], preperiod, period)


def periodic(head: Sequence[CFLayer], repeat: Sequence[CFLayer]) -> GeneralizedCFrac:
    return GeneralizedCFrac(list(head) + list(repeat), len(head), len(repeat))


# -- rendering ----------------------------------------------------------

def _monomial_text(c, e) -> str:
    mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def render(cf: GeneralizedCFrac, depth: Optional[int] = None) -> str:
    """Linear bracket form ``N0 / (D1 + N1 / (D2 + ...))``."""
    if depth is None:
        depth = len(cf.layers) if not cf.is_periodic else cf.preperiod + 2 * cf.period
    layers = cf.unrolled(depth)
    text = ""
    for i in range(len(layers) - 1, -1, -1):
        L = layers[i]
        inner = format_poly(L.denominator)
        if text:
            inner = f"{inner} - {text[1:]}" if text.startswith("-") else f"{inner} + {text}"
        elif cf.is_periodic:
            inner = f"{inner} + ..."
        elif cf.remainder is not None:
            inner = f"{inner} + ({cf.remainder})"
        text = f"{_monomial_text(L.coeff, L.exponent)} / ({inner})"
    return text


# -- evaluation ---------------------------------------------------------

def _check_contracting(layers: Sequence[CFLayer]):
    for i, L in enumerate(layers):
        if i and L.exponent == 0:
            raise NonContractingError(f"layer {i} has numerator exponent 0")


def evaluate(cf: GeneralizedCFrac, order: int) -> TruncatedSeries:
    """The power series of ``cf``, exact below q^order.

    Level i only needs accuracy order - (e_0 + ... + e_(i-1)); since every
    denominator is a unit, the unrolling can stop once the partial sum of
    exponents reaches ``order``: the ignored tail cannot reach that far.
    """
    if cf.is_periodic:
        base = cf.preperiod + cf.period
        _check_contracting(cf.layers if cf.preperiod else cf.layers + cf.layers[:1])
        gain = sum(L.exponent for L in cf.layers[cf.preperiod:])
        if gain == 0:
            raise NonContractingError("period with zero total exponent")
        layers = []
        total = 0
        i = 0
        while total < order or i < base:
            L = cf.layer(i)
            layers.append(L)
            total += L.exponent
            i += 1
        return _evaluate_layers(layers, None, order)
    _check_contracting(cf.layers)
    return _evaluate_layers(list(cf.layers), cf.remainder, order)


def _evaluate_layers(layers, remainder, order) -> TruncatedSeries:
    # targets[i] = order needed for Y_i
    targets = []
    need = order
    for L in layers:
        targets.append(need)
        need -= L.exponent
    y = None
    if remainder is not None:
        y = remainder
    for i in range(len(layers) - 1, -1, -1):
        L = layers[i]
        t = targets[i]
        if t <= L.exponent:
            # Y_i = N_i / (unit) is O(q^t) already
            y = TruncatedSeries.zero(t)
            continue
        below = L.denominator.to_series()
        if y is not None:
            below = below + y
        if below.valuation != 0:
            raise NonContractingError(f"denominator under layer {i} is not a unit")
        inv = invert(below.truncate(t - L.exponent))
        y = inv.scale(L.coeff).shift(L.exponent)
    return y.truncate(order)


def evaluate_exact(cf: GeneralizedCFrac) -> QPolynomialFraction:
    """Exact value of a finite fraction without a series remainder."""
    if cf.is_periodic or cf.remainder is not None:
        raise CFracError("only finite fractions without remainder have an exact value")
    y = None
    for L in reversed(cf.layers):
        below = QPolynomialFraction(L.denominator)
        if y is not None:
            below = below + y
        y = QPolynomialFraction(L.numerator) / below
    return y


# -- expansion ----------------------------------------------------------

@dataclass(frozen=True)
class DeltaProfile:
    delta: int
    k_sequence: tuple
    v_sequence: tuple
    degree_bounds_ok: bool
    u_sequence: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "k_sequence", tuple(self.k_sequence))
        object.__setattr__(self, "v_sequence", tuple(self.v_sequence))
        object.__setattr__(self, "u_sequence", tuple(self.u_sequence))


def _lead(x):
    """(valuation, leading coefficient) of a series or fraction."""
    if isinstance(x, QPolynomialFraction):
        return x.valuation, x.leading_coefficient
    return x.valuation, x.leading_coefficient


def _as_exact(f):
    if isinstance(f, TruncatedSeries) and f.order == INF:
        poly = f.to_polynomial()
        return QPolynomialFraction(poly)
    return f


def _expand(f, delta: Optional[int], max_layers: Optional[int]):
    """Shared engine for C-fractions (``delta`` None, all denominators 1)
    and super delta-fractions.

    With Y_0 = f: N_i = leading monomial of Y_i, T = N_i / Y_i,
    D_(i+1) = T cut below degree bound + 1, Y_(i+1) = T - D_(i+1).
    Returns the layers and the order below which they reproduce f.
    """
    f = _as_exact(f)
    exact = isinstance(f, QPolynomialFraction)
    if f.is_zero():
        raise CFracError("cannot expand a series that is zero to its known order")
    if f.valuation < 0:
        raise CFracError("expansion needs a power series (valuation >= 0)")
    limit = max_layers
    if limit is None and exact:
        limit = 100000
    layers = []
    y = f
    total = 0  # e_0 + ... + e_(i-1)
    prev_k = None
    while True:
        e, lead = _lead(y)
        if delta is None:
            bound = 0
        else:
            k = e if prev_k is None else e - prev_k - delta
            bound = k + delta - 1
            prev_k = k
        num = QPolynomial.monomial(e, lead)
        if exact:
            t = QPolynomialFraction(num) / y
            d = t.to_series(bound + 1).to_polynomial()
            rest = t - d
        else:
            t = num.to_series() / y
            if t.order <= bound:
                # the denominator under this numerator is undetermined
                if max_layers is not None or not layers:
                    raise InsufficientOrderError(
                        f"series known to order {f.order} determines only "
                        f"{max(len(layers) - 1, 0)} layers after the head "
                        f"(stuck at layer {len(layers)})", known=f.order)
                # dropping Y_i (valuation e) perturbs f from q^(total + e) on
                return layers, min(f.order, total + e)
            d = t.truncate(bound + 1).to_polynomial()
            rest = t - d.to_series()
        layers.append(CFLayer(lead, e, d))
        total += e
        if rest.is_zero():
            return layers, (INF if exact else f.order)
        if limit is not None and len(layers) > limit:
            return layers, (total + rest.valuation if exact
                            else min(f.order, total + rest.valuation))
        y = rest


def c_expand(f, max_layers: Optional[int] = None) -> GeneralizedCFrac:
    """The unique C-fraction of ``f`` (all denominators 1).

    ``max_layers`` counts layers after the head.  Exact inputs (fractions or
    polynomials) give a finite fraction; truncated ones stop as soon as the
    known coefficients run out and record ``certified_order``.
    """
    layers, certified = _expand(f, None, max_layers)
    return GeneralizedCFrac(layers, certified_order=certified)


def super_delta_expand(f, delta: int, max_layers: Optional[int] = None):
    """Han's super delta-fraction of ``f``:

        v0 q^k0 / (1 + q U1 - v1 q^(k0+k1+delta) / (1 + q U2 - ...))

    with deg U_(i+1) <= k_i + delta - 2.  Returns the fraction (signs folded
    into the stored numerators) and its profile.
    """
    if delta < 1:
        raise CFracError("delta must be >= 1")
    layers, certified = _expand(f, delta, max_layers)
    cf = GeneralizedCFrac(layers, certified_order=certified)
    profile = delta_profile(cf, delta)
    if not profile.degree_bounds_ok:
        raise DegreeBoundError("expansion violated its own degree bounds")
    return cf, profile


def delta_profile(cf: GeneralizedCFrac, delta: int, count: Optional[int] = None) -> DeltaProfile:
    """Read k_i, v_i, U_i off a fraction and check the super delta shape:
    numerator i >= 1 is -v_i q^(k_(i-1)+k_i+delta), deg D_(i+1) <= k_i+delta-1."""
    if count is None:
        count = len(cf.layers) if not cf.is_periodic else cf.preperiod + 2 * cf.period
    layers = cf.unrolled(count)
    ks, vs, us = [], [], []
    ok = True
    for i, L in enumerate(layers):
        if i == 0:
            k, v = L.exponent, L.coeff
        else:
            k = L.exponent - ks[-1] - delta
            v = -L.coeff
            if k < 0:
                ok = False
        ks.append(k)
        vs.append(v)
        d = L.denominator
        us.append(QPolynomial(d.coeffs[1:]) if d.degree >= 1 else QPolynomial())
        if d.degree > k + delta - 1:
            ok = False
    return DeltaProfile(delta, ks, vs, ok, us)


def metallic_super3(n: int) -> GeneralizedCFrac:
    """sigma_q(y_n) = q^(n-1) / (<n> + q^(2n+1) / (<n> + ...))."""
    if n < 1:
        raise CFracError("metallic index must be >= 1")
    den = angle_bracket(n)
    return periodic([CFLayer(1, n - 1, den)], [CFLayer(1, 2 * n + 1, den)])


# -- comparison and periodicity -----------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    order: int
    first_mismatch: Optional[int] = None

    def __bool__(self):
        return self.holds


def verify_identity(cf: GeneralizedCFrac, f, order: int) -> IdentityCheck:
    """Evaluate ``cf`` and compare with ``f`` below q^order."""
    if isinstance(f, QPolynomialFraction):
        f = f.to_series(order)
    if f.order < order:
        raise InsufficientOrderError(f"target known to order {f.order} < {order}",
                                     needed=order, known=f.order)
    value = evaluate(cf, order)
    m = first_difference(value, f, order)
    return IdentityCheck(m is None, order, m)


def find_period(layers: Sequence, min_repeats: int = 2):
    """Smallest (preperiod, period) such that the stream repeats with that
    period from the preperiod on and at least ``min_repeats`` full periods
    are visible.  None if nothing fits."""
    n = len(layers)
    for p in range(1, n // min_repeats + 1):
        for m in range(0, n - min_repeats * p + 1):
            if all(layers[i] == layers[i + p] for i in range(m, n - p)):
                return m, p
    return None


def periodize(cf: GeneralizedCFrac, min_repeats: int = 2) -> Optional[GeneralizedCFrac]:
    """Fold a computed layer stream into a periodic fraction if it repeats."""
    found = find_period(cf.layers, min_repeats)
    if found is None:
        return None
    m, p = found
    return GeneralizedCFrac(cf.layers[:m + p], m, p)


def find_glide(layers: Sequence, start: int = 0):
    """Smallest g >= 2 such that layers start..start+g-1 reappear right
    after in reverse order: L[start+g+j] == L[start+g-1-j] for j < g.
    Returns g or None."""
    n = len(layers) - start
    for g in range(2, n // 2 + 1):
        c = start + g
        if all(layers[c + j] == layers[c - 1 - j] for j in range(g)):
            return g
    return None
