"""Shifted Hankel determinants and number walls.

Delta^(l)_n(f) = det (f_(l+i+j))_(0 <= i, j < n), with Delta^(l)_0 = 1.

Two engines: a fraction-free (Bareiss) elimination that works on any
matrix, and Han's closed formula read off the H-fraction (super
2-fraction) of the shifted series.  The wall driver can run either and
cross-check a random sample of cells against the naive engine.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .cfrac import DeltaProfile, super_delta_expand
from .series import INF, InsufficientOrderError, SeriesError, TruncatedSeries, coeff

NAIVE = "naive"
HAN = "han_formula"
LEMMA = "lemma_shift"


class HankelError(SeriesError):
    pass


class UnsolvableStep(HankelError):
    """Both bordered minors that could fix a coefficient vanish."""

    def __init__(self, index: int):
        super().__init__(f"coefficient {index} is not determined by the walls "
                         f"(both candidate minors vanish)")
        self.index = index


class InconsistentWalls(HankelError):
    def __init__(self, index: int, detail: str = ""):
        super().__init__(f"walls disagree at coefficient {index}{': ' + detail if detail else ''}")
        self.index = index


# -- determinant engine --------------------------------------------------

def bareiss_det(matrix) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination
    (every division is exact); row swaps flip the sign."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - a * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_exact(matrix):
    """Determinant of a rational matrix: clear denominators, then Bareiss."""
    n = len(matrix)
    if n == 0:
        return 1
    dens = [Fraction(x).denominator for row in matrix for x in row]
    scale = 1
    for d in dens:
        scale = scale * d // math.gcd(scale, d)
    if scale == 1:
        return bareiss_det([[int(x) for x in row] for row in matrix])
    ints = [[int(Fraction(x) * scale) for x in row] for row in matrix]
    return coeff(Fraction(bareiss_det(ints), scale ** n))


def hankel_matrix(coeffs: Sequence, shift: int, n: int):
    return [[coeffs[shift + i + j] for j in range(n)] for i in range(n)]


def hankel_naive(f: TruncatedSeries, shift: int, n: int):
    """Delta^(shift)_n(f) by direct elimination."""
    if n == 0:
        return 1
    need = shift + 2 * n - 1
    if f.order < need:
        raise InsufficientOrderError(
            f"Delta^({shift})_{n} needs coefficients through q^{need - 1}, known below q^{f.order}",
            needed=need, known=f.order)
    cs = f.coefficients(0, need)
    return det_exact(hankel_matrix(cs, shift, n))


# -- Han's formula -------------------------------------------------------

@dataclass(frozen=True)
class HanParameters:
    k: tuple
    v: tuple
    s: tuple
    epsilon: tuple

    @classmethod
    def from_profile(cls, profile: DeltaProfile) -> "HanParameters":
        if profile.delta != 2:
            raise HankelError(f"Han's formula needs an H-fraction (delta = 2), got {profile.delta}")
        if not profile.degree_bounds_ok:
            raise HankelError("profile violates the H-fraction degree bounds")
        k, v = profile.k_sequence, profile.v_sequence
        s, eps = [0], [0]
        for i in range(len(k)):
            s.append(s[-1] + k[i] + 1)
            eps.append(eps[-1] + k[i] * (k[i] + 1) // 2)
        return cls(tuple(k), tuple(v), tuple(s), tuple(eps))


def han_determinants(profile, n_max: int) -> list:
    """Delta_0 .. Delta_(n_max) of an H-fraction:

        Delta_(s_j) = (-1)^(eps_j) * prod_(i<j) v_i^(s_j - s_i)

    with s_j = k_0 + ... + k_(j-1) + j and eps_j = sum k_i (k_i + 1) / 2, and
    Delta_m = 0 off that ladder.  The profile is taken to describe the
    whole fraction, so past the last rung every determinant vanishes.
    """
    params = profile if isinstance(profile, HanParameters) else HanParameters.from_profile(profile)
    out = [0] * (n_max + 1)
    out[0] = 1
    # running product of v_i^(s_j - s_i) over i < j, updated rung by rung
    prod = Fraction(1)
    vprod = Fraction(1)  # v_0 * ... * v_(j-1)
    for j in range(1, len(params.s)):
        s_j = params.s[j]
        vprod *= Fraction(params.v[j - 1])
        prod *= vprod ** (s_j - params.s[j - 1])
        if s_j > n_max:
            break
        out[s_j] = coeff(prod if params.epsilon[j] % 2 == 0 else -prod)
    return out


def han_row(f: TruncatedSeries, shift: int, n_max: int) -> list:
    """Delta^(shift)_0..n_max(f) from the H-fraction of the shifted series.

    The truncated expansion agrees with the series below q^c, and Hankel
    determinants of size m only read coefficients below q^(2m-1), so the
    formula is exact for m <= (c+1)/2.  Raises if that does not reach n_max.
    """
    need = shift + 2 * n_max - 1
    if f.order < need:
        raise InsufficientOrderError(f"row {shift} to size {n_max} needs order {need}",
                                     needed=need, known=f.order)
    if n_max == 0:
        return [1]
    full = f.drop(shift)
    want = 2 * n_max - 1
    margin = 8
    while True:
        g = full.truncate(min(full.order, want + margin))
        if g.is_zero():
            return [1] + [0] * n_max
        cf, profile = super_delta_expand(g, 2)
        c = cf.certified_order
        if c == INF or (c + 1) // 2 >= n_max:
            return han_determinants(profile, n_max)
        if g.order >= full.order:
            raise InsufficientOrderError(
                f"H-fraction certifies sizes up to {(c + 1) // 2} only, {n_max} requested",
                needed=need + 2 * (n_max - (c + 1) // 2), known=f.order)
        margin *= 2


def lemma_shift(k: int, n: int) -> Tuple[int, Optional[int]]:
    """For F = q^k / (1 + q U - q^(k+2) G) with deg U <= k:
    Delta_n(F) = factor * Delta_index(G).  Index None stands for the empty
    determinant 1 (n = 0), factor 0 covers the vanishing range 1 <= n <= k."""
    if k < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    if n == 0:
        return 1, None
    if n <= k:
        return 0, None
    return (-1) ** ((k * (k + 1) // 2) % 2), n - k - 1


def metallic_shift_relation(k: int, n: int) -> Tuple[int, int]:
    """Delta^(k)_n([y_k]) = sign * Delta^(k+1)_(n-k-1)([y_k]); returns (sign, index)."""
    e = n + (k + 1) * (k - 2) // 2
    return (-1) ** (e % 2), n - k - 1


# -- walls ----------------------------------------------------------------

@dataclass
class HankelWall:
    source: str
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)
    methods: Dict[Tuple[int, int], str] = field(default_factory=dict)

    def set(self, shift: int, n: int, value, method: str):
        self.entries[(shift, n)] = value
        self.methods[(shift, n)] = method

    def __getitem__(self, key):
        return self.entries[key]

    def get(self, shift: int, n: int, default=None):
        return self.entries.get((shift, n), default)

    @property
    def shifts(self) -> list:
        return sorted({s for s, _ in self.entries})

    def row(self, shift: int) -> list:
        ns = sorted(n for s, n in self.entries if s == shift)
        out = []
        for expect, n in enumerate(ns):
            if n != expect:
                break
            out.append(self.entries[(shift, n)])
        return out

    def rows(self) -> dict:
        return {s: self.row(s) for s in self.shifts}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        width = max((len(r) for r in self.rows().values()), default=0)
        w.writerow(["shift"] + [f"n{n}" for n in range(width)])
        for s, r in self.rows().items():
            w.writerow([s] + [str(x) for x in r])
        return buf.getvalue()

    def to_json(self):
        return {"source": self.source,
                "rows": [{"shift": s, "values": [str(x) for x in r],
                          "methods": sorted({self.methods[(s, n)] for n in range(len(r))})}
                         for s, r in self.rows().items()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def pretty(self) -> str:
        """Aligned number-wall view: one line per shift."""
        rows = self.rows()
        cells = {s: [str(x) for x in r] for s, r in rows.items()}
        w = max((len(c) for r in cells.values() for c in r), default=1)
        label = max((len(str(s)) for s in cells), default=1)
        lines = []
        for s, r in cells.items():
            lines.append(f"l={str(s).rjust(label)}: " + " ".join(c.rjust(w) for c in r))
        return "\n".join(lines)


def hankel_wall(f: TruncatedSeries, shift_max: int, n_max: int, method: str = "auto",
                source: str = "series", cross_check: int = 5, seed: int = 0,
                shift_min: int = 0) -> HankelWall:
    """Fill Delta^(l)_n for shift_min <= l <= shift_max and 0 <= n <= n_max.

    ``method`` is "naive", "han" or "auto" (Han's formula on every row, naive
    only where the H-fraction route fails).  With the fast path, a seeded
    random sample of ``cross_check`` cells is recomputed naively; any
    disagreement raises.
    """
    if method not in ("auto", "naive", "han"):
        raise ValueError(f"unknown method {method!r}")
    wall = HankelWall(source)
    for ell in range(shift_min, shift_max + 1):
        row = None
        if method in ("auto", "han"):
            try:
                row = han_row(f, ell, n_max)
            except InsufficientOrderError:
                if method == "han":
                    raise
        if row is not None:
            for n, x in enumerate(row):
                wall.set(ell, n, x, HAN)
        else:
            for n in range(n_max + 1):
                wall.set(ell, n, hankel_naive(f, ell, n), NAIVE)
    fast = [key for key, m in wall.methods.items() if m == HAN and key[1] > 0]
    if fast and cross_check:
        rng = random.Random(seed)
        sample = rng.sample(sorted(fast), min(cross_check, len(fast)))
        for ell, n in sample:
            naive = hankel_naive(f, ell, n)
            if naive != wall[(ell, n)]:
                raise HankelError(f"Han formula gives {wall[(ell, n)]} but elimination gives "
                                  f"{naive} at shift {ell}, size {n}")
    return wall


# -- recovering a series from its walls -----------------------------------

def _bordered(coeffs: list, shift: int, n: int, k: int, value):
    cs = list(coeffs) + [0] * (shift + 2 * n - 1 - len(coeffs))
    cs[k] = value
    return det_exact(hankel_matrix(cs, shift, n))


def reconstruct_from_walls(rows: Sequence[Sequence], length: int) -> TruncatedSeries:
    """Recover f_0 .. f_(length-1) from the rows Delta^(0..3)_n(f).

    f_k sits alone in the bottom-right corner of two determinants:
    k even: Delta_(k/2+1) and Delta^(2)_(k/2); k odd: Delta^(1)_((k+1)/2) and
    Delta^(3)_((k-1)/2).  Each is linear in f_k with the next smaller
    determinant of the same row as slope.  The first usable member of the
    pair fixes f_k, the other one (when present) is checked.
    """
    if len(rows) < 4:
        raise HankelError("need the rows for shifts 0, 1, 2 and 3")
    rows = [list(r) for r in rows]
    coeffs: list = []
    for k in range(length):
        if k % 2 == 0:
            pair = [(0, k // 2 + 1), (2, k // 2)]
        else:
            pair = [(1, (k + 1) // 2), (3, (k - 1) // 2)]
        usable = [(s, n) for s, n in pair if n >= 1]
        for s, n in usable:
            if n >= len(rows[s]):
                raise HankelError(f"row {s} is too short to reach coefficient {k} "
                                  f"(needs entry {n})")
        solved = None
        for s, n in usable:
            slope = rows[s][n - 1]
            if slope == 0:
                continue
            base = _bordered(coeffs, s, n, k, 0)
            solved = coeff(Fraction(rows[s][n] - base) / slope)
            break
        if solved is None:
            raise UnsolvableStep(k)
        for s, n in usable:
            got = _bordered(coeffs, s, n, k, solved)
            if got != rows[s][n]:
                raise InconsistentWalls(k, f"Delta^({s})_{n} would be {got}, wall says {rows[s][n]}")
        coeffs.append(solved)
    return TruncatedSeries.from_coefficients(coeffs, order=length)
