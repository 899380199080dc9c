"""q-deformations [x]_q of rationals and quadratic irrationals.

Rationals become exact ratios of polynomials, computed twice: once as
``T_q^c1 S_q T_q^c2 S_q ... T_q^cn . 0`` over the Hirzebruch-Jung (minus)
expansion, once by evaluating the alternating q / q^-1 regular continued
fraction.  Quadratic irrationals become power series obtained from the
fixed point of the Moebius matrix of one period of the regular expansion.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .series import (
    INF,
    IllPosedError,
    InsufficientOrderError,
    QPolynomial,
    TruncatedSeries,
    coeff,
    invert,
    poly_gcd,
    solve_quadratic_functional,
)


class QRealError(ValueError):
    pass


class MismatchError(QRealError):
    """The two continued-fraction routes disagree (an implementation bug)."""


class ParseError(QRealError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


ONE = QPolynomial([1])
ZERO = QPolynomial()
Q = QPolynomial([0, 1])


class QPolynomialFraction:
    """num(q) / den(q), kept fully reduced: gcd removed, denominator primitive
    over Z with positive leading coefficient.  Laurent monomials such as q^-2
    live in the denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = _poly(num)
        den = _poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        c = den.content()
        if den.coeffs[-1] < 0:
            c = -c
        self.num = QPolynomial(coeff(x / Fraction(c)) for x in num.coeffs)
        self.den = QPolynomial(coeff(x / Fraction(c)) for x in den.coeffs)

    @classmethod
    def monomial(cls, exponent: int, c=1):
        if exponent >= 0:
            return cls(QPolynomial.monomial(exponent, c))
        return cls(QPolynomial([c]), QPolynomial.monomial(-exponent))

    @staticmethod
    def _lift(x):
        if isinstance(x, QPolynomialFraction):
            return x
        if isinstance(x, (QPolynomial, int, Fraction)):
            return QPolynomialFraction(x)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QPolynomialFraction(self.num * other.den + other.num * self.den,
                                   self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomialFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QPolynomialFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero fraction")
        return QPolynomialFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero

    def is_zero(self) -> bool:
        return self.num.is_zero

    def __repr__(self):
        return f"QPolynomialFraction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def at_one(self) -> Fraction:
        """Specialization q = 1."""
        d = self.den(1)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at q = 1")
        return Fraction(self.num(1)) / d

    @property
    def valuation(self):
        if self.num.is_zero:
            return INF
        return self.num.valuation - self.den.valuation

    @property
    def leading_coefficient(self):
        return coeff(Fraction(self.num[self.num.valuation]) / self.den[self.den.valuation])

    def to_series(self, order: int) -> TruncatedSeries:
        """Expansion at q = 0, exact below q^order."""
        if self.num.is_zero:
            return TruncatedSeries.zero(order)
        n = self.num.to_series()
        if n.valuation >= order:
            return TruncatedSeries.zero(order)
        inv = invert(self.den.to_series(), order=order - n.valuation)
        return (n * inv).truncate(order)


def _poly(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return QPolynomial([x])
    if isinstance(x, (list, tuple)):
        return QPolynomial(x)
    raise TypeError(f"expected polynomial, got {x!r}")


@dataclass(frozen=True)
class MoebiusMatrix:
    """2x2 matrix of polynomials acting by f -> (a f + b) / (c f + d)."""

    a: QPolynomial
    b: QPolynomial
    c: QPolynomial
    d: QPolynomial

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _poly(getattr(self, name)))

    def __matmul__(self, other: "MoebiusMatrix") -> "MoebiusMatrix":
        return MoebiusMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, k: int) -> "MoebiusMatrix":
        if k < 0:
            return self.adjugate() ** (-k)
        out = IDENTITY
        for _ in range(k):
            out = out @ self
        return out

    def adjugate(self) -> "MoebiusMatrix":
        """Inverse up to the scalar det."""
        return MoebiusMatrix(self.d, -self.b, -self.c, self.a)

    def det(self) -> QPolynomial:
        return self.a * self.d - self.b * self.c

    def det_is_signed_monomial(self) -> bool:
        d = self.det()
        nz = [c for c in d.coeffs if c != 0]
        return len(nz) == 1 and abs(nz[0]) == 1

    def is_scalar(self) -> bool:
        """Projectively the identity: b = c = 0 and a = d."""
        return self.b.is_zero and self.c.is_zero and self.a == self.d and not self.a.is_zero

    def is_projective_identity(self) -> bool:
        """Scalar with a monomial scalar (a unit of Z[q, q^-1])."""
        if not self.is_scalar():
            return False
        nz = [c for c in self.a.coeffs if c != 0]
        return len(nz) == 1 and abs(nz[0]) == 1

    def at_zero(self) -> QPolynomialFraction:
        """The image of 0, i.e. b / d."""
        return QPolynomialFraction(self.b, self.d)


IDENTITY = MoebiusMatrix(ONE, ZERO, ZERO, ONE)
T_Q = MoebiusMatrix(Q, ONE, ZERO, ONE)
S_Q = MoebiusMatrix(ZERO, -ONE, Q, ZERO)
T_Q_INV = MoebiusMatrix(ONE, -ONE, ZERO, Q)


def t_power(k: int) -> MoebiusMatrix:
    """T_q^k; negative powers use T_q^-1 ~ [[1, -1], [0, q]]."""
    if k >= 0:
        return MoebiusMatrix(Q ** k, QPolynomial.q_integer(k), ZERO, ONE)
    m = -k
    return MoebiusMatrix(ONE, -QPolynomial.q_integer(m), ZERO, Q ** m)


def apply_moebius(M: MoebiusMatrix, f, order=None):
    """(a f + b) / (c f + d) for a fraction or a truncated series."""
    if isinstance(f, (int, Fraction, QPolynomial)):
        f = QPolynomialFraction(f)
    if isinstance(f, QPolynomialFraction):
        top = f * M.a + M.b
        bottom = f * M.c + M.d
        if bottom.is_zero():
            raise ZeroDivisionError("Moebius image has zero denominator")
        return top / bottom
    if isinstance(f, TruncatedSeries):
        top = f * M.a + M.b
        bottom = f * M.c + M.d
        if bottom.is_zero():
            raise ZeroDivisionError("Moebius image has zero denominator")
        if bottom.order == INF:
            cap = order if order is not None else top.order
            if cap == INF:
                raise InsufficientOrderError("exact input needs an explicit order")
            bottom = bottom.truncate(cap)
        out = top * invert(bottom)
        return out if order is None else out.truncate(order)
    raise TypeError(f"cannot apply a Moebius matrix to {f!r}")


# -- q-integers ---------------------------------------------------------

def q_integer(n: int) -> QPolynomialFraction:
    """[n]_q; for n < 0 this is -q^n [-n]_q."""
    if n >= 0:
        return QPolynomialFraction(QPolynomial.q_integer(n))
    return QPolynomialFraction(-QPolynomial.q_integer(-n), QPolynomial.monomial(-n))


def q_integer_inverse_param(n: int) -> QPolynomialFraction:
    """[n]_(q^-1) = q^(1-n) [n]_q."""
    return q_integer(n) * QPolynomialFraction.monomial(1 - n)


def angle_bracket(n: int) -> QPolynomial:
    """<n>_q = q [n]_q + (1 + q^n)(1 - q)."""
    return Q * QPolynomial.q_integer(n) + (ONE + Q ** n) * (ONE - Q)


def metallic_relation(n: int):
    """(A, B, C) with A y^2 + B y = C characterizing [y_n]_q."""
    return Q, (ONE + Q ** n) * (ONE - Q) - Q * QPolynomial.q_integer(n), ONE


# -- continued-fraction expansions of rationals -------------------------

@dataclass(frozen=True)
class CFExpansion:
    kind: str  # "hirzebruch_jung" or "regular"
    terms: tuple
    periodic_tail_start: int | None = None

    def __post_init__(self):
        if self.kind not in ("hirzebruch_jung", "regular"):
            raise ValueError(f"unknown expansion kind {self.kind!r}")
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        lower = 2 if self.kind == "hirzebruch_jung" else 1
        for i, t in enumerate(self.terms[1:], start=2):
            if t < lower:
                raise ValueError(f"term {i} of a {self.kind} expansion must be >= {lower}, got {t}")

    def value(self) -> Fraction:
        """Exact value of a finite expansion."""
        if self.periodic_tail_start is not None:
            raise ValueError("periodic expansion has no finite value")
        if not self.terms:
            raise ValueError("empty expansion")
        x = Fraction(self.terms[-1])
        for t in reversed(self.terms[:-1]):
            x = t - 1 / x if self.kind == "hirzebruch_jung" else t + 1 / x
        return x


def hirzebruch_jung_expansion(r) -> CFExpansion:
    r = Fraction(r)
    terms = []
    while True:
        if r.denominator == 1:
            terms.append(int(r))
            break
        c = math.floor(r) + 1
        terms.append(c)
        r = 1 / (c - r)
    return CFExpansion("hirzebruch_jung", terms)


def regular_expansion(r) -> CFExpansion:
    r = Fraction(r)
    terms = []
    while True:
        a = math.floor(r)
        terms.append(a)
        if r == a:
            break
        r = 1 / (r - a)
    return CFExpansion("regular", terms)


def q_rational_hj(r) -> QPolynomialFraction:
    """[r]_q = T^c1 S T^c2 S ... T^cn . 0 over the minus expansion."""
    cs = hirzebruch_jung_expansion(r).terms
    M = IDENTITY
    for i, c in enumerate(cs):
        if i:
            M = M @ S_Q
        M = M @ t_power(c)
    return M.at_zero()


def q_rational_regular(r) -> QPolynomialFraction:
    """[r]_q from [a1]_q + q^a1 / ([a2]_(1/q) + q^-a2 / ([a3]_q + ...))."""
    a = regular_expansion(r).terms
    x = None
    for i in range(len(a) - 1, -1, -1):
        odd = i % 2 == 0  # position i+1 in 1-based numbering
        head = q_integer(a[i]) if odd else q_integer_inverse_param(a[i])
        if x is None:
            x = head
        else:
            num = QPolynomialFraction.monomial(a[i] if odd else -a[i])
            x = head + num / x
    return x


def q_rational(r) -> QPolynomialFraction:
    """[r]_q as a reduced fraction; both definitions must agree."""
    via_matrices = q_rational_hj(r)
    via_regular = q_rational_regular(r)
    if via_matrices != via_regular:
        raise MismatchError(f"[{r}]_q: matrix route {via_matrices} != regular route {via_regular}")
    return via_matrices


# -- quadratic irrationals ----------------------------------------------

def _regular_step(a: int, odd: bool) -> MoebiusMatrix:
    """X -> [a]_q + q^a / X at odd positions, [a]_(1/q) + q^-a / X at even
    ones, scaled by a monomial so all entries are polynomials."""
    if odd:
        if a >= 1:
            return MoebiusMatrix(QPolynomial.q_integer(a), Q ** a, ONE, ZERO)
        return MoebiusMatrix(-QPolynomial.q_integer(-a), ONE, Q ** (-a), ZERO)
    if a < 1:
        raise QRealError("regular continued fraction terms after the first must be >= 1")
    return MoebiusMatrix(Q * QPolynomial.q_integer(a), ONE, Q ** a, ZERO)


def _steps_matrix(terms: Sequence[int], start_odd: bool = True) -> MoebiusMatrix:
    M = IDENTITY
    odd = start_odd
    for a in terms:
        M = M @ _regular_step(a, odd)
        odd = not odd
    return M


def q_quadratic_irrational(preperiod: Sequence[int], period: Sequence[int], order: int) -> TruncatedSeries:
    """[x]_q for x = [preperiod; (period)] (eventually periodic regular CF)."""
    pre = [int(t) for t in preperiod]
    per = [int(t) for t in period]
    if not per:
        raise QRealError("period must be nonempty")
    if any(t < 1 for t in per) or any(t < 1 for t in pre[1:]):
        raise QRealError("terms after the first must be >= 1")
    if len(pre) % 2:
        # the period must start at an odd (q, not 1/q) position
        pre = pre + [per[0]]
        per = per[1:] + per[:1]
    if len(per) % 2:
        per = per + per
    P = _steps_matrix(per)
    # fixed point f = (a f + b) / (c f + d):  c f^2 + (d - a) f = b
    try:
        tail = solve_quadratic_functional(P.c, P.d - P.a, P.b, order + 2 * len(pre) + 2)
    except IllPosedError as exc:
        raise QRealError(f"no power-series fixed point: {exc}") from exc
    if not pre:
        return tail.truncate(order)
    return apply_moebius(_steps_matrix(pre), tail, order=order)


def q_metallic(n: int, order: int) -> TruncatedSeries:
    """[y_n]_q for y_n = [n, n, n, ...] = (n + sqrt(n^2 + 4)) / 2."""
    if n < 1:
        raise QRealError("metallic index must be >= 1")
    A, B, C = metallic_relation(n)
    f = solve_quadratic_functional(A, B, C, order)
    f.assert_integral()
    if order > 2 * n and not gap_check(f, n, n):
        raise QRealError(f"metallic series for n={n} fails the gap pattern")
    return f


def sigma_q(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """([x]_q - [k]_q) / q^(k+1) for k <= x < k+1."""
    head = QPolynomial.q_integer(k).to_series()
    return (f - head).shift(-(k + 1))


def gap_check(f: TruncatedSeries, k: int, n: int) -> bool:
    """Head [k]_q, zeros at q^k .. q^(k+n-1), then coefficient 1 at q^(k+n)."""
    if k < 0:
        raise QRealError("gap_check covers k >= 0 only")
    if f.order < k + n + 1:
        raise InsufficientOrderError(f"gap check needs order {k + n + 1}",
                                     needed=k + n + 1, known=f.order)
    if any(f[i] != 1 for i in range(k)):
        return False
    if any(f[i] != 0 for i in range(k, k + n)):
        return False
    return f[k + n] == 1


# -- named series -------------------------------------------------------

def catalan_series(order: int) -> TruncatedSeries:
    """C = 1 + q C^2."""
    return solve_quadratic_functional(-Q, ONE, ONE, order)


def motzkin_series(order: int) -> TruncatedSeries:
    """M = 1 + q M + q^2 M^2."""
    return solve_quadratic_functional(-(Q * Q), ONE - Q, ONE, order)


# -- number specs -------------------------------------------------------

@dataclass(frozen=True)
class NumberSpec:
    """A parsed number: rational, metallic:n, a quadratic CF, or a named series."""

    kind: str
    rational: Fraction | None = None
    metallic: int | None = None
    preperiod: tuple = ()
    period: tuple = ()
    name: str | None = None
    text: str = field(default="", compare=False)

    def series(self, order: int) -> TruncatedSeries:
        if self.kind == "rational":
            return q_rational(self.rational).to_series(order)
        if self.kind == "metallic":
            return q_metallic(self.metallic, order)
        if self.kind == "quadratic":
            if not self.period:
                return q_rational(_finite_regular_value(self.preperiod)).to_series(order)
            return q_quadratic_irrational(self.preperiod, self.period, order)
        if self.kind == "named":
            return NAMED_SERIES[self.name](order)
        raise QRealError(f"unsupported number spec {self.kind!r}")


NAMED_SERIES = {"catalan": catalan_series, "motzkin": motzkin_series}

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def _finite_regular_value(terms) -> Fraction:
    return CFExpansion("regular", terms).value()


def parse_number_spec(text: str) -> NumberSpec:
    s = text.strip()
    low = s.lower()
    if low in NAMED_SERIES:
        return NumberSpec("named", name=low, text=text)
    if low.startswith("metallic:"):
        arg = s[len("metallic:"):]
        if not arg.strip().isdigit() or int(arg) < 1:
            raise ParseError("metallic index must be a positive integer", text,
                             text.find(":") + 1)
        return NumberSpec("metallic", metallic=int(arg), text=text)
    if s.startswith("["):
        return _parse_cf(text)
    m = _RATIONAL.match(s)
    if m:
        p = int(m.group(1))
        d = int(m.group(2)) if m.group(2) else 1
        if d == 0:
            raise ParseError("zero denominator", text, text.find("/") + 1)
        return NumberSpec("rational", rational=Fraction(p, d), text=text)
    pos = 0
    while pos < len(text) and (text[pos].isspace() or text[pos] in "+-0123456789/"):
        pos += 1
    raise ParseError("unrecognized number spec", text, pos)


def _parse_cf(text: str) -> NumberSpec:
    """``[a0;a1,...,(p1,...,pk)]``, the period in parentheses is optional."""
    i = text.index("[")
    j = text.rfind("]")
    if j < 0:
        raise ParseError("missing closing ']'", text, len(text))
    if text[j + 1:].strip():
        raise ParseError("trailing characters", text, j + 1)
    body = text[i + 1:j]
    offset = i + 1
    period: list = []
    if "(" in body:
        lp = body.index("(")
        rp = body.find(")")
        if rp < lp:
            raise ParseError("unbalanced parenthesis", text, offset + lp)
        if body[rp + 1:].strip():
            raise ParseError("period must come last", text, offset + rp + 1)
        period = _parse_ints(body[lp + 1:rp], text, offset + lp + 1)
        if not period:
            raise ParseError("empty period", text, offset + lp)
        body = body[:lp]
    head, _, rest = body.partition(";")
    pre = _parse_ints(head, text, offset)
    pre += _parse_ints(rest, text, offset + len(head) + 1)
    if any(t < 1 for t in pre[1:]) or any(t < 1 for t in period):
        raise ParseError("terms after the first must be positive", text, offset)
    if not pre and not period:
        raise ParseError("empty continued fraction", text, offset)
    return NumberSpec("quadratic", preperiod=tuple(pre), period=tuple(period), text=text)


def _parse_ints(chunk: str, text: str, offset: int) -> list:
    out = []
    pos = 0
    for part in chunk.split(","):
        stripped = part.strip()
        if stripped:
            try:
                out.append(int(stripped))
            except ValueError:
                raise ParseError(f"expected an integer, got {stripped!r}", text,
                                 offset + pos + part.find(stripped)) from None
        pos += len(part) + 1
    return out
