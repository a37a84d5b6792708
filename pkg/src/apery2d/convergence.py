"""Cross-differences of the (p, q) tables, ratio telescoping, the rational
enclosure of zeta(3) that follows from them, and the linear forms
eps[i][j] = q[i][j] zeta(3) - p[i][j] as certified balls."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ball import BallReal, digits_for
from .errors import InsufficientPrecisionError, InvariantViolation
from .refvalues import zeta3


@dataclass(frozen=True)
class CrossDifference:
    i: int
    j: int
    row_value: Fraction
    col_value: Fraction


def _get(t, i, j):
    try:
        return t[i, j]
    except (IndexError, KeyError) as exc:
        raise IndexError(f"index ({i},{j}) outside table") from exc


def delta_row(p, q, i, j):
    """p[i-1][j] q[i-1][j-1] - p[i-1][j-1] q[i-1][j]."""
    if i < 1 or j < 1:
        raise IndexError("delta_row needs i, j >= 1")
    return _get(p, i - 1, j) * _get(q, i - 1, j - 1) - _get(p, i - 1, j - 1) * _get(q, i - 1, j)


def delta_col(p, q, i, j):
    """p[i][j-1] q[i-1][j-1] - p[i-1][j-1] q[i][j-1]."""
    if i < 1 or j < 1:
        raise IndexError("delta_col needs i, j >= 1")
    return _get(p, i, j - 1) * _get(q, i - 1, j - 1) - _get(p, i - 1, j - 1) * _get(q, i, j - 1)


def cross_difference(p, q, i, j):
    c = CrossDifference(i, j, delta_row(p, q, i, j), delta_col(p, q, i, j))
    if p.pair.name == "zeta3":
        if c.row_value != Fraction(1, j**3) or c.col_value != Fraction(1, i**3):
            raise InvariantViolation(f"cross-difference closed form fails at ({i},{j})")
    return c


def delta_identity_defects(p, q, N):
    """Failures of f(0,j) drow[i][j] = f(i,0) dcol[i][j] and f(0,j) drow[i+1][j] = g(i,0) dcol[i][j].

    These are the general-pair forms; for zeta3 they read j^3 drow = i^3 dcol
    and j^3 drow[i+1] = i^3 dcol. Returns a list of (identity, i, j).
    """
    pair = p.pair
    bad = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            dr, dc = delta_row(p, q, i, j), delta_col(p, q, i, j)
            if pair.f(0, j) * dr != pair.f(i, 0) * dc:
                bad.append(("row-col", i, j))
            # drow[i+1][j] only involves row i, which is in range
            if pair.f(0, j) * delta_row(p, q, i + 1, j) != pair.g(i, 0) * dc:
                bad.append(("next-row-col", i, j))
    return bad


def closed_form_defects(p, q, N):
    """For zeta3: every (i, j) <= N where drow != j^-3 or dcol != i^-3."""
    bad = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if delta_row(p, q, i, j) != Fraction(1, j**3) or delta_col(p, q, i, j) != Fraction(1, i**3):
                bad.append((i, j))
    return bad


def ratio(p, q, i, j):
    den = _get(q, i, j)
    if den == 0:
        raise ZeroDivisionError(f"q[{i}][{j}] = 0")
    return _get(p, i, j) / den


def telescoping_defects(p, q, N):
    """zeta3 identities
        r[i][j] - r[i-1][j] = 1 / (i^3 q[i][j] q[i-1][j])
        r[i][j] - r[i][j-1] = 1 / (j^3 q[i][j] q[i][j-1])
    checked for 1 <= i, j <= N. Returns failures as (kind, i, j)."""
    bad = []
    for i in range(0, N + 1):
        for j in range(0, N + 1):
            r = ratio(p, q, i, j)
            if i >= 1 and r - ratio(p, q, i - 1, j) != Fraction(1, i**3 * q[i, j] * q[i - 1, j]):
                bad.append(("column", i, j))
            if j >= 1 and i >= 1 and r - ratio(p, q, i, j - 1) != Fraction(1, j**3 * q[i, j] * q[i, j - 1]):
                bad.append(("row", i, j))
    return bad


def row_form_with_column_neighbour_holds(p, q, i, j):
    """The row difference with denominator j^3 q[i][j] q[i-1][j] instead of q[i][j-1]."""
    return ratio(p, q, i, j) - ratio(p, q, i, j - 1) == Fraction(1, j**3 * q[i, j] * q[i - 1, j])


def tail_bound(j):
    """Rational upper bound on sum_{k>=j} k^-3."""
    if j < 1:
        raise ValueError("j must be >= 1")
    if j == 1:
        return zeta3(30).upper
    return Fraction(1, 2 * (j - 1) ** 2)


@dataclass(frozen=True)
class Enclosure:
    N: int
    center: Fraction
    half_width: Fraction

    @property
    def lo(self):
        return self.center - self.half_width

    @property
    def hi(self):
        return self.center + self.half_width

    @property
    def width(self):
        return 2 * self.half_width

    def contains(self, x):
        if isinstance(x, BallReal):
            return self.lo <= x.lower and x.upper <= self.hi
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Fraction(x) <= self.hi

    def overlaps(self, ball):
        return self.lo <= ball.upper and ball.lower <= self.hi

    def to_ball(self, digits):
        return BallReal.from_interval(self.lo, self.hi, digits)

    def to_dict(self):
        from .reports import fmt_q

        return {"N": self.N, "lo": fmt_q(self.lo), "hi": fmt_q(self.hi), "width": f"{float(self.width):.3e}"}


def zeta3_enclosure(q, p, N):
    """[r - B, r + B] around r = p[N][N] / q[N][N] with B = tail_bound(N) / q[N][N]^2."""
    if N < 2:
        raise ValueError("enclosure needs N >= 2")
    qn = _get(q, N, N)
    return Enclosure(N, ratio(p, q, N, N), tail_bound(N) / qn**2)


def required_digits(n):
    return math.ceil(1.6 * n) + 32


@dataclass(frozen=True)
class LinearForm:
    i: int
    j: int
    q: Fraction
    p: Fraction
    value: BallReal
    bound_ok: bool | None  # |eps| <= zeta(3)/q: True certified, None undecided

    @property
    def n(self):
        return self.i

    def to_dict(self):
        from .reports import fmt_q

        return {"i": self.i, "j": self.j, "q": fmt_q(self.q), "p": fmt_q(self.p), **self.value.to_dict()}


def _epsilon_once(qv, pv, i, j, digits):
    work = digits + digits_for(qv) + 5
    z = zeta3(work)
    val = (z * qv - pv).with_digits(digits)
    if not val.excludes_zero():
        raise InsufficientPrecisionError(
            f"eps[{i}][{j}] is not separated from zero at {digits} digits",
            max(2 * digits, required_digits(max(i, j))),
        )
    bound_ok = None
    z_lo = BallReal.exact(z.lower / qv, digits)
    z_hi = BallReal.exact(z.upper / qv, digits)
    mag = abs(val)
    if mag.upper <= z_lo.lower:
        bound_ok = True
    elif mag.lower > z_hi.upper:
        raise InvariantViolation(f"|eps[{i}][{j}]| exceeds zeta(3)/q")
    return LinearForm(i, j, qv, pv, val, bound_ok)


def epsilon(q, p, i, j, digits=None):
    """Certified ball for q[i][j] zeta(3) - p[i][j].

    ``digits`` is the absolute decimal precision of the result; zeta(3) is
    taken with enough extra digits to absorb the size of q. With
    ``digits=None`` the default policy is used, retried once at double
    precision.
    """
    qv, pv = _get(q, i, j), _get(p, i, j)
    if digits is not None:
        return _epsilon_once(qv, pv, i, j, digits)
    d = required_digits(max(i, j))
    try:
        return _epsilon_once(qv, pv, i, j, d)
    except InsufficientPrecisionError:
        return _epsilon_once(qv, pv, i, j, 2 * d)


def diagonal_epsilons(q, p, N, digits=None, start=0):
    return [epsilon(q, p, n, n, digits) for n in range(start, N + 1)]


@lru_cache(maxsize=16)
def _enclosure_for_digits(digits):
    from .polypair import PRESETS
    from .table import SERIES, UNIT, build

    N = max(2, digits // 3 + 3)
    z = PRESETS["zeta3"]
    p = build(z, SERIES, N, N, mode="streaming", check=False)
    q = build(z, UNIT, N, N, mode="streaming", check=False)
    return zeta3_enclosure(q, p, N)


def zeta3_reference(digits):
    """Euler-Maclaurin ball for zeta(3), cross-checked against the table enclosure."""
    ball = zeta3(digits)
    enc = _enclosure_for_digits(digits)
    if not enc.overlaps(ball):
        raise InvariantViolation(
            f"zeta(3) sources disagree: Euler-Maclaurin {ball!r} vs table enclosure at N = {enc.N}"
        )
    return ball


def epsilon_csv_rows(forms):
    """Rows n, q, p, midpoint, radius, |eps|^(1/n) for a diagonal series."""
    rows = []
    for lf in forms:
        root = ""
        if lf.n >= 1:
            root = abs(lf.value).root(lf.n).mid_str(20)
        rows.append([lf.n, lf.q, lf.p, lf.value.mid_str(), lf.value.rad_str(), root])
    return ["n", "q", "p", "midpoint", "radius", "abs_eps_root_n"], rows
