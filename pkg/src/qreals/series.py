"""Exact polynomials and truncated Laurent series in one variable q.

Coefficients are exact rationals.  Integral values are kept as plain ``int``
(which already reports ``denominator == 1``) and everything else as
``fractions.Fraction``; the mix keeps the common all-integer case fast.

A :class:`TruncatedSeries` knows its coefficients for exponents strictly
below ``order``.  Polynomials promoted to series carry ``order = math.inf``
(exact).  Every operation returns the tightest order it can prove, and
reading a coefficient at or beyond the known order raises
:class:`InsufficientOrderError`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

try:  # optional: GMP rationals make the inner loops several times faster
    import gmpy2
    _MPQ = type(gmpy2.mpq())
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

INF = math.inf


class SeriesError(ArithmeticError):
    pass


class InsufficientOrderError(SeriesError):
    """A coefficient beyond the known truncation order was requested."""

    def __init__(self, message, *, needed=None, known=None):
        super().__init__(message)
        self.needed = needed
        self.known = known


class ZeroSeriesError(SeriesError, ZeroDivisionError):
    pass


class IllPosedError(SeriesError):
    pass


def coeff(x) -> int | Fraction:
    """Canonical exact coefficient: ``int`` when integral, else ``Fraction``."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return coeff(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return coeff(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


def _div(a, b):
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return coeff(Fraction(a) / b)


def _strip(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _fast(cs: Sequence) -> list:
    """Coefficients in the fastest available exact rational type."""
    if gmpy2 is None or all(isinstance(c, int) for c in cs):
        return list(cs)
    mpq = gmpy2.mpq
    return [c if isinstance(c, int) else mpq(c.numerator, c.denominator) for c in cs]


def _slow(x) -> int | Fraction:
    """Back from ``_fast`` to the canonical coefficient type."""
    if isinstance(x, int):
        return x
    if gmpy2 is not None and isinstance(x, _MPQ):
        den = int(x.denominator)
        if den == 1:
            return int(x.numerator)
        # GMP keeps rationals in lowest terms; skip Fraction's second gcd
        f = object.__new__(Fraction)
        f._numerator, f._denominator = int(x.numerator), den
        return f
    return coeff(x)


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    """First ``n`` coefficients of the product of two coefficient lists."""
    a, b = _fast(a), _fast(b)
    la, lb = len(a), len(b)
    out = []
    for t in range(n):
        lo = max(0, t - lb + 1)
        hi = min(t, la - 1)
        s = 0
        for i in range(lo, hi + 1):
            ai = a[i]
            if ai:
                s += ai * b[t - i]
        out.append(_slow(s))
    return out


class QPolynomial:
    """Dense polynomial in q with exact rational coefficients.

    The zero polynomial has ``degree == -1``; code that wants the
    conventional sentinel can test :attr:`is_zero`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_strip([coeff(c) for c in coeffs]))

    @classmethod
    def monomial(cls, exponent: int, c=1) -> "QPolynomial":
        if exponent < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([0] * exponent + [c])

    @classmethod
    def q_integer(cls, n: int) -> "QPolynomial":
        """[n]_q = 1 + q + ... + q^(n-1) for n >= 0."""
        if n < 0:
            raise ValueError("use qreals.qreal.q_integer for negative n")
        return cls([1] * n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self.coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial([other])
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

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
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        n = len(self.coeffs) + len(other.coeffs) - 1
        return QPolynomial(_convolve(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = QPolynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q^k (k >= 0)."""
        if not self.coeffs:
            return self
        return QPolynomial([0] * k + list(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return coeff(acc) if isinstance(acc, (int, Fraction)) else acc

    def divmod(self, other: "QPolynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [0] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = _div(rem[i + dq], lead)
            quot[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] -= c * oc
        return QPolynomial(quot), QPolynomial(rem[:dq] if dq > 0 else [])

    def content(self):
        """Positive rational c such that self / c is primitive over Z."""
        if not self.coeffs:
            return 1
        num = 0
        den = 1
        for c in self.coeffs:
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return coeff(Fraction(num, den))

    def primitive(self) -> "QPolynomial":
        c = self.content()
        return QPolynomial(_div(x, c) for x in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def to_series(self, order=INF) -> "TruncatedSeries":
        return TruncatedSeries.from_coefficients(self.coeffs, 0, order)


def poly_gcd(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Monic-up-to-content gcd over Q, returned primitive with positive lead."""
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r.primitive() if not r.is_zero else r
    if a.is_zero:
        return a
    a = a.primitive()
    if a.coeffs[-1] < 0:
        a = -a
    return a


q = QPolynomial([0, 1])


class TruncatedSeries:
    """Laurent series ``sum c_i q^i`` known for exponents below ``order``.

    ``valuation`` is the exponent of the first nonzero coefficient, or the
    sentinel ``order`` for a series that is zero as far as it is known.
    """

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, valuation, coeffs, order):
        self.valuation = valuation
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, valuation: int = 0, order=None):
        """Build from coefficients of q^valuation, q^(valuation+1), ...

        ``order`` defaults to ``valuation + len(coeffs)``; pass ``math.inf``
        for an exact (polynomial) series.
        """
        cs = [coeff(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs)
        if order != INF:
            order = int(order)
            cs = cs[: max(0, order - valuation)]
        return cls._normalized(valuation, cs, order)

    @classmethod
    def _normalized(cls, valuation, cs, order):
        i = 0
        n = len(cs)
        while i < n and cs[i] == 0:
            i += 1
        if i == n:
            return cls(order, [], order)
        if i:
            cs = cs[i:]
            valuation += i
        if order == INF:
            _strip(cs)
        return cls(valuation, cs, order)

    @classmethod
    def zero(cls, order=INF):
        return cls(order, [], order)

    @classmethod
    def one(cls, order=INF):
        return cls(0, [1], order) if order > 0 else cls.zero(order)

    @classmethod
    def monomial(cls, exponent: int, c=1, order=INF):
        c = coeff(c)
        if c == 0 or exponent >= order:
            return cls.zero(order)
        return cls(exponent, [c], order)

    @classmethod
    def lift(cls, x, order=INF) -> "TruncatedSeries":
        if isinstance(x, TruncatedSeries):
            return x
        if isinstance(x, QPolynomial):
            return x.to_series(order)
        if isinstance(x, (int, Fraction)):
            return cls.from_coefficients([x], 0, order)
        to_series = getattr(x, "to_series", None)
        if to_series is not None and order != INF:
            return to_series(order)
        raise TypeError(f"cannot treat {x!r} as a series")

    # -- inspection -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.order == INF

    def is_zero(self) -> bool:
        """True when identically zero up to the known order."""
        return not self.coeffs

    def __getitem__(self, i):
        if isinstance(i, slice):
            start = 0 if i.start is None else i.start
            stop = self.order if i.stop is None else i.stop
            return [self[j] for j in range(start, stop)]
        if i >= self.order:
            raise InsufficientOrderError(
                f"coefficient of q^{i} requested but series is known only below q^{self.order}",
                needed=i + 1, known=self.order)
        k = i - self.valuation
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def coefficients(self, start=None, stop=None) -> list:
        """Coefficient list for exponents start..stop-1 (defaults: from 0 or
        the valuation if negative, up to the known order)."""
        if start is None:
            start = min(0, self.valuation) if self.valuation != INF else 0
        if stop is None:
            if self.order == INF:
                stop = self.valuation + len(self.coeffs) if self.coeffs else start
            else:
                stop = self.order
        return [self[j] for j in range(start, stop)]

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            raise ZeroSeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def assert_integral(self) -> "TruncatedSeries":
        for j, c in enumerate(self.coeffs):
            if not isinstance(c, int):
                raise SeriesError(f"non-integral coefficient {c} at q^{self.valuation + j}")
        return self

    def __repr__(self):
        return (f"TruncatedSeries(valuation={self.valuation!r}, "
                f"coeffs={self.coeffs[:8]!r}{'...' if len(self.coeffs) > 8 else ''}, "
                f"order={self.order!r})")

    def __str__(self):
        terms = format_terms((self.valuation + j, c) for j, c in enumerate(self.coeffs))
        if self.order == INF:
            return terms
        tail = f"O(q^{self.order})"
        return tail if terms == "0" else f"{terms} + {tail}"

    # -- arithmetic -----------------------------------------------------

    def truncate(self, order) -> "TruncatedSeries":
        if order >= self.order:
            return self
        if self.valuation >= order:
            return TruncatedSeries.zero(order)
        return TruncatedSeries(self.valuation, self.coeffs[: order - self.valuation], order)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (QPolynomial, int, Fraction)):
            return TruncatedSeries.lift(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.valuation, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroSeriesError("division by zero scalar")
            return self.scale(Fraction(1) / other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, invert(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(other, invert(self))

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        out = TruncatedSeries.one()
        base = self
        while k:
            if k & 1:
                out = mul(out, base)
            base = mul(base, base)
            k >>= 1
        return out

    def scale(self, c) -> "TruncatedSeries":
        c = coeff(c)
        if c == 0:
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries(self.valuation, [coeff(c * x) for x in self.coeffs], self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (any integer k)."""
        if not self.coeffs:
            return TruncatedSeries.zero(self.order + k)
        return TruncatedSeries(self.valuation + k, self.coeffs, self.order + k)

    def drop(self, ell: int) -> "TruncatedSeries":
        """The power series sum_i f_(i+ell) q^i: the first ``ell`` coefficients
        of a power series removed and the rest shifted down."""
        if self.valuation < 0:
            raise SeriesError("drop() expects a power series")
        return TruncatedSeries.from_coefficients(
            self.coefficients(ell, self.order if self.order != INF else
                              max(ell, self.valuation + len(self.coeffs))),
            0, self.order - ell)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.order == other.order and self.valuation == other.valuation
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.valuation, tuple(self.coeffs), self.order))

    def __call__(self, x):
        raise TypeError("formal series are not evaluated numerically")

    def to_polynomial(self) -> QPolynomial:
        if self.valuation < 0:
            raise SeriesError("negative powers present")
        if not self.coeffs:
            return QPolynomial()
        return QPolynomial([0] * self.valuation + list(self.coeffs))

    # -- serialization --------------------------------------------------

    def to_bfile(self) -> str:
        """``index value`` lines from min(0, valuation) up to the known order."""
        start = self.valuation if self.valuation < 0 else 0
        if self.order == INF:
            stop = self.valuation + len(self.coeffs) if self.coeffs else 0
        else:
            stop = self.order
        return "".join(f"{i} {self[i]}\n" for i in range(start, stop))

    def to_json(self) -> dict:
        def enc(c):
            c = Fraction(c)
            return f"{c.numerator}/{c.denominator}"

        valuation = self.valuation
        return {
            "valuation": None if valuation == INF else valuation,
            "order": None if self.order == INF else self.order,
            "coefficients": [enc(c) for c in self.coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        order = INF if data["order"] is None else int(data["order"])
        valuation = data["valuation"]
        if valuation is None:
            return cls.zero(order)
        return cls.from_coefficients([Fraction(c) for c in data["coefficients"]],
                                     int(valuation), order)

    @classmethod
    def from_bfile(cls, text: str) -> "TruncatedSeries":
        """Parse ``index value`` lines; indices must be consecutive."""
        pairs = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad b-file line: {raw!r}")
            pairs.append((int(parts[0]), Fraction(parts[1])))
        if not pairs:
            return cls.zero(0)
        start = pairs[0][0]
        for j, (i, _) in enumerate(pairs):
            if i != start + j:
                raise ValueError(f"b-file indices not consecutive at {i}")
        return cls.from_coefficients([v for _, v in pairs], start, start + len(pairs))


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    if not a.coeffs:
        return b.truncate(order) if b.coeffs else TruncatedSeries.zero(order)
    if not b.coeffs:
        return a.truncate(order)
    lo = min(a.valuation, b.valuation)
    if order == INF:
        hi = max(a.valuation + len(a.coeffs), b.valuation + len(b.coeffs))
    else:
        hi = order
    out = [0] * (hi - lo)
    for src in (a, b):
        off = src.valuation - lo
        for j, c in enumerate(src.coeffs):
            if off + j >= len(out):
                break
            out[off + j] += c
    return TruncatedSeries._normalized(lo, [coeff(c) for c in out], order)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if not a.coeffs or not b.coeffs:
        order = min(a.order + (b.valuation if b.coeffs else b.order),
                    b.order + (a.valuation if a.coeffs else a.order))
        return TruncatedSeries.zero(order)
    v = a.valuation + b.valuation
    order = min(a.order + b.valuation, b.order + a.valuation)
    if order == INF:
        n = len(a.coeffs) + len(b.coeffs) - 1
    else:
        n = order - v
    return TruncatedSeries._normalized(v, _convolve(a.coeffs, b.coeffs, n), order)


def invert(a: TruncatedSeries, order=None) -> TruncatedSeries:
    """Multiplicative inverse; ``order`` caps (or, for exact input, sets)
    the result's truncation order."""
    a = TruncatedSeries.lift(a)
    if not a.coeffs:
        raise ZeroSeriesError("cannot invert a series that is zero to its known order")
    v = a.valuation
    if a.order == INF and len(a.coeffs) == 1:
        inv = TruncatedSeries.monomial(-v, _div(1, a.coeffs[0]))
        return inv if order is None else inv.truncate(order)
    result_order = a.order - 2 * v
    if order is not None:
        result_order = min(result_order, order)
    if result_order == INF:
        raise SeriesError("inverse of an exact series needs an explicit order")
    n = result_order + v
    if n <= 0:
        return TruncatedSeries.zero(result_order)
    u = _fast(a.coeffs)
    lu = len(u)
    inv0 = (gmpy2.mpq(1) if gmpy2 is not None else Fraction(1)) / u[0]
    w = [inv0]
    for t in range(1, n):
        s = 0
        for i in range(1, min(t, lu - 1) + 1):
            ui = u[i]
            if ui:
                s += ui * w[t - i]
        w.append(-s * inv0 if s else 0)
    w = [_slow(x) for x in w]
    return TruncatedSeries._normalized(-v, w, result_order)


def shift_div(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply by q^(-k)."""
    return a.shift(-k)


def equal_to_order(a: TruncatedSeries, b: TruncatedSeries, order) -> bool:
    return first_difference(a, b, order) is None


def first_difference(a: TruncatedSeries, b: TruncatedSeries, order):
    """Smallest exponent below ``order`` where a and b differ, or None."""
    a = TruncatedSeries.lift(a)
    b = TruncatedSeries.lift(b)
    known = min(a.order, b.order)
    if order > known:
        raise InsufficientOrderError(
            f"comparison to order {order} but operands are known only to order {known}",
            needed=order, known=known)
    vals = [x.valuation for x in (a, b) if x.coeffs]
    lo = min(vals) if vals else order
    for i in range(lo, order):
        if a[i] != b[i]:
            return i
    return None


def solve_quadratic_functional(A, B, C, order: int) -> TruncatedSeries:
    """The power series f with ``A f^2 + B f = C`` up to ``order``.

    A must vanish at q = 0 and B must not; then the q^m coefficient of the
    relation fixes f_m from f_0, ..., f_(m-1).
    """
    A = _as_poly(A)
    B = _as_poly(B)
    C_s = TruncatedSeries.lift(C) if isinstance(C, TruncatedSeries) else _as_poly(C).to_series()
    if B[0] == 0:
        raise IllPosedError("B(0) = 0: the coefficient recursion is not solvable")
    if A[0] != 0:
        raise IllPosedError("A(0) != 0: no unique power-series root")
    if C_s.valuation < 0:
        raise IllPosedError("right-hand side has negative powers; no power-series root")
    if order > C_s.order:
        raise InsufficientOrderError("right-hand side not known to the requested order",
                                     needed=order, known=C_s.order)
    b0 = B[0]
    a = A.coeffs
    bb = B.coeffs
    f: list = []
    sq: list = []  # coefficients of f^2, filled lazily
    for m in range(order):
        s = C_s[m]
        for j in range(1, min(m, len(bb) - 1) + 1):
            if bb[j]:
                s -= bb[j] * f[m - j]
        for i in range(1, min(m, len(a) - 1) + 1):
            if a[i]:
                t = m - i
                while len(sq) <= t:
                    r = len(sq)
                    acc = 0
                    for x in range(r + 1):
                        acc += f[x] * f[r - x]
                    sq.append(acc)
                s -= a[i] * sq[t]
        f.append(_div(coeff(s), b0))
    return TruncatedSeries.from_coefficients(f, 0, order)


def _as_poly(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return QPolynomial([x])
    if isinstance(x, (list, tuple)):
        return QPolynomial(x)
    if isinstance(x, TruncatedSeries) and x.is_exact:
        return x.to_polynomial()
    raise TypeError(f"expected a polynomial, got {x!r}")


def format_terms(terms) -> str:
    parts = []
    for e, c in terms:
        if c == 0:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_poly(coeffs: Sequence) -> str:
    return format_terms(enumerate(coeffs))
