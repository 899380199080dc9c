"""Somos / Gale-Robinson recurrences, (anti)periodicity and the relations
between neighbouring rows of a number wall.

The three-term Gale-Robinson relation of order k reads

    D[n+2k+2] D[n] = D[n+2k+1] D[n+1] - D[n+k+1]^2

(Somos-4 is k = 1, Somos-6 is k = 2).  All checks are products, never
quotients, so zero entries need no special care.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .hankel import HankelWall, hankel_wall
from .qreal import q_metallic


class RecurrenceError(ValueError):
    pass


class CoverageError(RecurrenceError):
    """The wall lacks a row that a relation needs."""


@dataclass(frozen=True)
class RecurrenceSpec:
    kind: str
    k: int = 1

    def __post_init__(self):
        fixed = {"somos4": 1, "somos6": 2}
        if self.kind in fixed:
            object.__setattr__(self, "k", fixed[self.kind])
        elif self.kind != "gale_robinson":
            raise RecurrenceError(f"unknown recurrence kind {self.kind!r}")
        if self.k < 1:
            raise RecurrenceError("order parameter k must be positive")

    @classmethod
    def gale_robinson(cls, k: int) -> "RecurrenceSpec":
        return cls("gale_robinson", k)

    @property
    def window(self) -> int:
        return 2 * self.k + 2

    @property
    def middle(self) -> int:
        return self.k + 1

    def residual(self, row: Sequence, n: int):
        """Left side minus right side at position n."""
        k = self.k
        return (row[n + 2 * k + 2] * row[n]
                - row[n + 2 * k + 1] * row[n + 1]
                + row[n + k + 1] ** 2)


@dataclass
class RecurrenceReport:
    spec: RecurrenceSpec
    tested: Tuple[int, int]  # n ranges over tested[0] .. tested[1] - 1
    holds: bool
    first_failure: Optional[int] = None
    periodicity: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.holds


def check_recurrence(row: Sequence, spec: RecurrenceSpec) -> RecurrenceReport:
    """Test the relation at every n with n + 2k + 2 inside the row."""
    if len(row) < spec.window + 1:
        raise RecurrenceError(f"row of length {len(row)} is too short for a window of "
                              f"{spec.window + 1} terms")
    stop = len(row) - spec.window
    for n in range(stop):
        if spec.residual(row, n) != 0:
            return RecurrenceReport(spec, (0, stop), False, n)
    return RecurrenceReport(spec, (0, stop), True)


def detect_periodicity(row: Sequence, p_max: int) -> Optional[Tuple[int, int]]:
    """Smallest p <= p_max with row[n+p] = sign * row[n] on the whole row.

    An antiperiod p is found before the period 2p it implies, so the
    antiperiodic form is the one reported."""
    if len(row) < 2 * p_max:
        raise RecurrenceError(f"row of length {len(row)} cannot certify periods up to {p_max}")
    for p in range(1, p_max + 1):
        for sign in (-1, 1):
            if all(row[n + p] == sign * row[n] for n in range(len(row) - p)):
                if any(row[n] != 0 for n in range(len(row) - p)):
                    return p, sign
    return None


# -- relations between rows ------------------------------------------------

@dataclass(frozen=True)
class RowRelation:
    """Delta^(left)_n = (-1)^(a n + b) * Delta^(right)_(n + offset)."""

    left: int
    right: int
    offset: int
    a: int
    b: int

    def sign(self, n: int) -> int:
        return -1 if (self.a * n + self.b) % 2 else 1

    def __str__(self):
        idx = "n" if self.offset == 0 else (f"n+{self.offset}" if self.offset > 0 else f"n{self.offset}")
        parity = {(0, 0): "", (0, 1): "-"}.get((self.a, self.b % 2))
        if parity is None:
            parity = f"(-1)^(n{'+' + str(self.b) if self.b else ''}) "
        return f"D{self.left}[n] = {parity}D{self.right}[{idx}]"


def family_relations(family: str, k: Optional[int] = None) -> List[RowRelation]:
    """The row relations claimed for a named family."""
    R = RowRelation
    if family == "golden":
        return [R(0, 1, -2, 1, 0), R(0, 2, 0, 0, 0)]
    if family == "silver":
        return [R(ell + 1, ell, 3, 1, 1) for ell in range(3)]
    if family == "bronze":
        return [R(0, 1, -4, 1, 1), R(0, 2, -8, 0, 1), R(0, 3, -12, 1, 0), R(0, 4, -16, 0, 0),
                R(1, 2, -4, 1, 0)]
    if family == "platinum":
        return [R(ell, ell + 1, -5, 1, 1) for ell in range(5)]
    if family == "conjecture":
        if k is None or k < 1:
            raise RecurrenceError("the conjectured relations need k >= 1")
        # k (k + 2l + 1) is always even: one of k and k + 1 is
        return [R(ell, ell - 1, k + 1, 1, k * (k + 2 * ell + 1) // 2) for ell in range(1, k + 2)]
    if family == "metallic_shift":
        if k is None or k < 1:
            raise RecurrenceError("the shift relation needs k >= 1")
        return [R(k, k + 1, -k - 1, 1, (k + 1) * (k - 2) // 2)]
    raise RecurrenceError(f"unknown family {family!r}")


@dataclass
class InterconnectionReport:
    family: str
    holds: bool
    checked: int
    first_failure: Optional[dict] = None

    def __bool__(self):
        return self.holds


def check_relations(rows: Dict[int, Sequence], relations: Sequence[RowRelation],
                    family: str = "custom") -> InterconnectionReport:
    checked = 0
    for rel in relations:
        if rel.left not in rows or rel.right not in rows:
            raise CoverageError(f"relation {rel} needs rows {rel.left} and {rel.right}")
        left, right = rows[rel.left], rows[rel.right]
        for n in range(len(left)):
            m = n + rel.offset
            if m < 0 or m >= len(right):
                continue
            checked += 1
            expect = rel.sign(n) * right[m]
            if left[n] != expect:
                return InterconnectionReport(family, False, checked, {
                    "relation": str(rel), "n": n, "expected": str(expect), "found": str(left[n])})
    return InterconnectionReport(family, True, checked)


def check_interconnection(wall, family: str, k: Optional[int] = None) -> InterconnectionReport:
    """Check every cell of the family's relations that the wall covers;
    negative indices are skipped."""
    rows = wall.rows() if isinstance(wall, HankelWall) else dict(wall)
    return check_relations(rows, family_relations(family, k), family)


def check_beyond_wall(row: Sequence, expected: Sequence) -> Tuple[bool, Optional[int]]:
    """Prefix comparison: (True, None) or (False, first differing index)."""
    if len(expected) > len(row):
        return False, len(row)
    for i, x in enumerate(expected):
        if row[i] != x:
            return False, i
    return True, None


# -- recovering a periodic row from its first values ----------------------

class AmbiguousRecovery(RecurrenceError):
    def __init__(self, solutions):
        super().__init__(f"{len(solutions)} different rows fit the initial values")
        self.solutions = solutions


def _isqrt_exact(c: int) -> Optional[int]:
    if c < 0:
        return None
    r = math.isqrt(c)
    return r if r * r == c else None


def periodic_row_completions(initial: Sequence[int], period: int, spec: RecurrenceSpec,
                             sign: int = 1, domain: Sequence[int] = (-1, 0, 1),
                             limit: int = 64) -> List[List[int]]:
    """All rows with D[n + period] = sign * D[n], the given first values,
    and the Gale-Robinson relation at every n.

    Relations with a single unknown are solved outright (a product with a
    known zero factor does not count as containing its other factor).
    When nothing is forced, the search branches over ``domain`` for the
    first open entry; entries forced by a square get both roots.
    """
    if len(initial) > period:
        raise RecurrenceError("more initial values than the period")
    k = spec.k
    found: List[List[int]] = []

    def value(vals, n):
        q, r = divmod(n, period)
        v = vals[r]
        return None if v is None else v * sign ** q

    def assign(vals, n, x):
        q, r = divmod(n, period)
        vals[r] = x * sign ** q

    def product(vals, i, j):
        a, b = value(vals, i), value(vals, j)
        if a == 0 or b == 0:
            return 0
        if a is None or b is None:
            return None
        return a * b

    def propagate(vals):
        """Returns False on contradiction, else a list of square branches."""
        changed = True
        while changed:
            changed = False
            for n in range(period):
                i0, i1, j0, j1, m = n + 2 * k + 2, n, n + 2 * k + 1, n + 1, n + k + 1
                left = product(vals, i0, i1)
                right = product(vals, j0, j1)
                mid = value(vals, m)
                if left is not None and right is not None and mid is not None:
                    if left != right - mid * mid:
                        return False
                    continue
                open_ = {t % period for t in (i0, i1, j0, j1, m) if value(vals, t) is None}
                if len(open_) != 1:
                    continue
                r = open_.pop()
                if left is None:
                    slots, known = [t for t in (i0, i1) if t % period == r], (right - mid * mid)
                    if len(slots) != 1 or right is None or mid is None:
                        continue
                    other = value(vals, i1 if slots[0] == i0 else i0)
                    if known % other:
                        return False
                    assign(vals, slots[0], known // other)
                elif right is None:
                    slots = [t for t in (j0, j1) if t % period == r]
                    if len(slots) != 1 or mid is None:
                        continue
                    other = value(vals, j1 if slots[0] == j0 else j0)
                    known = left + mid * mid
                    if known % other:
                        return False
                    assign(vals, slots[0], known // other)
                else:
                    sq = right - left
                    root = _isqrt_exact(sq)
                    if root is None:
                        return False
                    if root == 0:
                        assign(vals, m, 0)
                    else:
                        continue  # two roots; left to the search
                changed = True
        return True

    def search(vals):
        if len(found) >= limit:
            return
        vals = list(vals)
        if not propagate(vals):
            return
        open_ = [i for i, v in enumerate(vals) if v is None]
        if not open_:
            found.append(vals)
            return
        target = open_[0]
        candidates = list(domain)
        for n in range(period):
            m = n + k + 1
            if m % period != target:
                continue
            left = product(vals, n + 2 * k + 2, n)
            right = product(vals, n + 2 * k + 1, n + 1)
            if left is not None and right is not None:
                root = _isqrt_exact(right - left)
                if root is None:
                    return
                q = m // period
                candidates = sorted({root * sign ** q, -root * sign ** q})
                break
        for x in candidates:
            trial = list(vals)
            trial[target] = x
            search(trial)

    search(list(initial) + [None] * (period - len(initial)))
    return found


def recover_periodic_row(initial: Sequence[int], period: int, spec: RecurrenceSpec,
                         sign: int = 1, domain: Sequence[int] = (-1, 0, 1)) -> List[int]:
    """The unique completion of ``initial`` (see periodic_row_completions);
    raises AmbiguousRecovery or RecurrenceError otherwise."""
    sols = periodic_row_completions(initial, period, spec, sign, domain)
    if not sols:
        raise RecurrenceError("no row fits the initial values")
    if len(sols) > 1:
        raise AmbiguousRecovery(sols)
    return sols[0]


# -- the conjecture harness ---------------------------------------------------

@dataclass
class RowVerdict:
    shift: int
    values_prefix: List[int]
    in_range_pm1: bool
    periodicity: Optional[dict]
    expected_period: dict
    recurrence: dict
    interconnection: Optional[dict]

    @property
    def passed(self) -> bool:
        ok = self.in_range_pm1 and self.expected_period["holds"] and self.recurrence["holds"]
        if self.interconnection is not None:
            ok = ok and self.interconnection["holds"]
        return ok


@dataclass
class ConjectureReport:
    k: int
    n_max: int
    rows: List[RowVerdict] = field(default_factory=list)
    status: str = "pending"  # passed | failed | budget_exceeded
    insufficient_range: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_json(self):
        return {
            "k": self.k, "n_max": self.n_max, "status": self.status,
            "insufficient_range": self.insufficient_range, "notes": list(self.notes),
            "rows": [{
                "shift": r.shift,
                "values_prefix": r.values_prefix,
                "in_range_pm1": r.in_range_pm1,
                "periodicity": r.periodicity,
                "expected_period": r.expected_period,
                "recurrence": r.recurrence,
                "interconnection": r.interconnection,
            } for r in self.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def verify_conjecture(k: int, n_max: int, budget_seconds: Optional[float] = None,
                      method: str = "auto", seed: int = 0, prefix: int = 24) -> ConjectureReport:
    """Check, for [y_k]_q and shifts 0..k+1 up to size n_max: entries in
    {-1, 0, 1}; D[n + 2k(k+1)] = (-1)^k D[n]; the Gale-Robinson relation of
    order k; and D^(l)[n] = (-1)^(n + k(k+2l+1)/2) D^(l-1)[n+k+1]."""
    if k < 1:
        raise RecurrenceError("k must be positive")
    start = time.monotonic()
    report = ConjectureReport(k, n_max)
    period = 2 * k * (k + 1)
    sign = (-1) ** k
    spec = RecurrenceSpec.gale_robinson(k)
    if n_max < period:
        report.insufficient_range = True
        report.notes.append(f"n_max={n_max} is below the claimed period {period}")
    if n_max + 1 < spec.window + 1:
        report.insufficient_range = True
        report.notes.append("rows too short for the recurrence window")

    def over_budget():
        return budget_seconds is not None and time.monotonic() - start > budget_seconds

    f = q_metallic(k, (k + 1) + 2 * n_max + 1)
    rows: Dict[int, list] = {}
    relations = {rel.left: rel for rel in family_relations("conjecture", k)}
    for ell in range(k + 2):
        if over_budget():
            report.status = "budget_exceeded"
            report.notes.append(f"budget of {budget_seconds}s exhausted before row {ell}")
            return report
        wall = hankel_wall(f, ell, n_max, method=method, source=f"metallic:{k}",
                           cross_check=5, seed=seed + ell, shift_min=ell)
        row = wall.row(ell)
        rows[ell] = row
        pm1 = all(x in (-1, 0, 1) for x in row)
        bad = next((n for n in range(len(row) - period) if row[n + period] != sign * row[n]), None)
        expected = {"p": period, "sign": sign, "holds": bad is None, "first_failure": bad}
        found = None
        p_max = min(period, len(row) // 2)
        if p_max >= 1:
            det = detect_periodicity(row, p_max)
            if det is not None:
                found = {"p": det[0], "sign": det[1]}
        if len(row) >= spec.window + 1:
            rec = check_recurrence(row, spec)
            recurrence = {"kind": spec.kind, "k": k, "holds": rec.holds,
                          "first_failure": rec.first_failure}
        else:
            recurrence = {"kind": spec.kind, "k": k, "holds": True, "first_failure": None}
        inter = None
        if ell >= 1:
            res = check_relations(rows, [relations[ell]], "conjecture")
            inter = {"holds": res.holds, "checked": res.checked,
                     "first_failure": res.first_failure}
        report.rows.append(RowVerdict(ell, row[:prefix], pm1, found, expected, recurrence, inter))
    report.status = "passed" if all(r.passed for r in report.rows) else "failed"
    return report
