"""Continued fractions for zeta(3, x+1): P(n, x), exact convergents, the tails
omega(i), and how the first two columns and the rows of the zeta3 tables
line up with them.

Indexing: a CF b0 + a1/(b1 + a2/(b2 + ...)) at depth T has consumed the
partial denominators b1..bT. The Ramanujan-type CF used here is

    zeta(3, x+1) = 1/(P(0,x) - 1^6/(P(1,x) - 2^6/(P(2,x) - ...)))

so b0 = 0, a1 = 1, b_k = P(k-1, x) and a_k = -(k-1)^6 for k >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from .ball import BallReal
from .errors import DegenerateCFError, DomainError
from .polypair import PRESETS, poly_add, poly_shift
from .refvalues import hurwitz_zeta3, zeta3
from .table import SERIES, UNIT, build


def P_poly(n, x):
    x = Fraction(x)
    return Fraction(n**3 + (n + 1) ** 3) + (4 * n + 2) * x * (x + 1)


def P_as_poly():
    """P(j, i) as a sparse polynomial {(a, b): c} in i, j."""
    # j^3 + (j+1)^3 + (4j+2)(i^2+i)
    return {
        (0, 3): 2, (0, 2): 3, (0, 1): 3, (0, 0): 1,
        (2, 1): 4, (1, 1): 4, (2, 0): 2, (1, 0): 2,
    }


def P_identity_holds(pair=None):
    """Exact polynomial check that f(i+1,j) - g(i+1,j+1) equals P(j,i)."""
    pair = pair or PRESETS["zeta3"]
    lhs = poly_add(poly_shift(dict(pair.f.coeffs), 1, 0), poly_shift(dict(pair.g.coeffs), 1, 1), -1)
    return poly_add(lhs, P_as_poly(), -1) == {}


@dataclass(frozen=True)
class CFSpec:
    numerator: Callable[[int], Fraction]  # a_k, k >= 1
    denominator: Callable[[int], Fraction]  # b_k, k >= 1
    lead: Fraction = Fraction(0)  # b_0
    label: str = "cf"


def ramanujan_cf(x):
    """CF whose convergents tend to zeta(3, x+1), for rational x >= -1/2."""
    x = Fraction(x)
    if x < Fraction(-1, 2):
        raise DomainError(f"x = {x} is outside the half plane x >= -1/2 where the CF represents zeta(3, x+1)")
    return CFSpec(
        numerator=lambda k: Fraction(1) if k == 1 else Fraction(-((k - 1) ** 6)),
        denominator=lambda k: P_poly(k - 1, x),
        label=f"zeta(3,{x + 1})",
    )


def omega_cf(i):
    """omega(i) = -1^6/(P(1,i) - 2^6/(P(2,i) - ...))."""
    if i < 0:
        raise DomainError("omega(i) needs i >= 0")
    return CFSpec(
        numerator=lambda k: Fraction(-(k**6)),
        denominator=lambda k: P_poly(k, i),
        label=f"omega({i})",
    )


@dataclass(frozen=True)
class ConvergentPair:
    depth: int
    numerator: Fraction
    denominator: Fraction

    @property
    def value(self):
        return self.numerator / self.denominator

    def to_dict(self):
        from .reports import fmt_q

        return {"depth": self.depth, "numerator": fmt_q(self.numerator), "denominator": fmt_q(self.denominator)}


def _raw_convergents(spec, depth):
    """(A_k, B_k) for k = 0..depth by A_k = b_k A_{k-1} + a_k A_{k-2}."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    A_prev, A = Fraction(1), spec.lead
    B_prev, B = Fraction(0), Fraction(1)
    out = [(A, B)]
    for k in range(1, depth + 1):
        a, b = spec.numerator(k), spec.denominator(k)
        A_prev, A = A, b * A + a * A_prev
        B_prev, B = B, b * B + a * B_prev
        out.append((A, B))
    return out


def convergents(spec, depth):
    """Convergents at depths 1..depth. A zero denominator raises at its depth."""
    out = []
    for k, (A, B) in enumerate(_raw_convergents(spec, depth)):
        if k == 0:
            continue
        if B == 0:
            raise DegenerateCFError(k)
        out.append(ConvergentPair(k, A, B))
    return out


def cf_value(spec, depth):
    return convergents(spec, depth)[-1].value


@dataclass(frozen=True)
class OmegaTail:
    i: int
    depth: int
    value: Fraction  # omega truncated at ``depth``
    ball: BallReal  # radius from the previous truncation; heuristic
    heuristic: bool = True

    def to_dict(self):
        from .reports import fmt_q

        return {
            "i": self.i, "depth": self.depth, "value": fmt_q(self.value),
            **self.ball.to_dict(), "radius_kind": "heuristic" if self.heuristic else "rigorous",
        }


def omega_tail(i, depth, digits=40):
    """omega(i) truncated at ``depth``, as a ball whose radius is |omega_T - omega_{T-1}|."""
    if depth < 2:
        raise ValueError("omega_tail needs depth >= 2 to bracket")
    cs = convergents(omega_cf(i), depth)
    cur, prev = cs[-1].value, cs[-2].value
    lo, hi = min(cur, prev), max(cur, prev)
    spread = max(cur - lo, hi - cur)
    return OmegaTail(i, depth, cur, BallReal.from_interval(cur - spread, cur + spread, digits))


def zeta3_tables_small(I, J=1):
    pair = PRESETS["zeta3"]
    return build(pair, SERIES, I, J), build(pair, UNIT, I, J)


def first_column_forms(p, q, I):
    """Check q[i][0] = 1, p[i][0] = sum_{n<=i} n^-3, q[i][1] = P(0,i) and
    p[i][1] = P(0,i) p[i][0] + 1 for 0 <= i <= I.

    Returns {"ok", "checked", "first_failure"} where first_failure is the
    first offending i with the name of the broken form.
    """
    partial = Fraction(0)
    for i in range(I + 1):
        if i:
            partial += Fraction(1, i**3)
        P0 = P_poly(0, i)
        checks = (
            ("q[i][0] = 1", q[i, 0] == 1),
            ("p[i][0] = partial sum", p[i, 0] == partial),
            ("q[i][1] = P(0,i)", q[i, 1] == P0),
            ("p[i][1] = P(0,i) p[i][0] + 1", p[i, 1] == P0 * partial + 1),
        )
        for name, ok in checks:
            if not ok:
                return {"ok": False, "checked": i, "first_failure": {"i": i, "form": name}}
    return {"ok": True, "checked": I + 1, "first_failure": None}


def scaled_row_recurrence_check(table, i, J):
    """v_j = (j!)^3 u[i][j] must satisfy v_{j+1} = P(j,i) v_j - j^6 v_{j-1} for 1 <= j <= J-1."""
    v = [factorial(j) ** 3 * table[i, j] for j in range(J + 1)]
    for j in range(1, J):
        if v[j + 1] != P_poly(j, i) * v[j] - j**6 * v[j - 1]:
            return {"ok": False, "i": i, "checked": j - 1, "first_failure": j}
    return {"ok": True, "i": i, "checked": max(J - 1, 0), "first_failure": None}


def table_convergent_defect(p, q, i, J):
    """First j <= J where the x = i CF disagrees with the tables, else None.

    The depth-j convergent has denominator (j!)^3 q[i][j] and numerator
    (j!)^3 p[i][j] - p[i][0] (j!)^3 q[i][j]; the offset p[i][0] is the
    partial sum that separates zeta(3) from zeta(3, i+1).
    """
    raw = _raw_convergents(ramanujan_cf(i), J)
    for j, (A, B) in enumerate(raw):
        s = factorial(j) ** 3
        if B != s * q[i, j] or A != s * p[i, j] - p[i, 0] * s * q[i, j]:
            return j
    return None


@dataclass(frozen=True)
class ConvergentCheck:
    x: Fraction
    depth: int
    value: Fraction
    target: BallReal
    residual: BallReal  # |value - zeta(3, x+1)|

    def to_dict(self):
        from .reports import fmt_q

        return {
            "x": fmt_q(self.x), "depth": self.depth, "convergent": fmt_q(self.value),
            "target_midpoint": self.target.mid_str(30), "residual_midpoint": self.residual.mid_str(30),
            "residual_radius": self.residual.rad_str(),
        }


def convergent_residual(x, depth, digits=40):
    """Certified ball for |C_T(x) - zeta(3, x+1)|."""
    x = Fraction(x)
    if x + 1 <= 0:
        raise DomainError(f"zeta(3, {x + 1}) is undefined")
    val = cf_value(ramanujan_cf(x), depth)
    target = hurwitz_zeta3(x + 1, digits)
    return ConvergentCheck(x, depth, val, target, abs(target - val))


def cf_trace_rows(x, depth, digits=40, step=1):
    """CSV rows depth, convergent, midpoint, residual for depths 1..depth."""
    x = Fraction(x)
    if x + 1 <= 0:
        raise DomainError(f"zeta(3, {x + 1}) is undefined")
    from .reports import fmt_q

    target = hurwitz_zeta3(x + 1, digits)
    rows = []
    for c in convergents(ramanujan_cf(x), depth):
        if c.depth % step and c.depth != depth:
            continue
        val = BallReal.exact(c.value, digits)
        rows.append([c.depth, fmt_q(c.value), val.mid_str(30), abs(target - val).mid_str(30)])
    return ["depth", "convergent", "midpoint", "residual"], rows


@dataclass(frozen=True)
class BridgeResult:
    i: int
    depth: int
    value: Fraction  # (omega_T p[i][0] + p[i][1]) / (omega_T q[i][0] + q[i][1])
    residual: BallReal  # |value - zeta(3)|, rigorous given omega_T

    def to_dict(self):
        from .reports import fmt_q

        return {
            "i": self.i, "depth": self.depth, "value": fmt_q(self.value),
            "residual_midpoint": self.residual.mid_str(30), "residual_radius": self.residual.rad_str(),
        }


def bridge_identity(i, depth, digits=40, tables=None):
    """Residual of zeta(3) = (w p[i][0] + p[i][1]) / (w q[i][0] + q[i][1]) with w = omega_T(i)."""
    p, q = tables if tables is not None else zeta3_tables_small(i)
    w = cf_value(omega_cf(i), depth)
    den = w * q[i, 0] + q[i, 1]
    if den == 0:
        raise DegenerateCFError(depth)
    val = (w * p[i, 0] + p[i, 1]) / den
    return BridgeResult(i, depth, val, abs(zeta3(digits) - val))


def bridge_trace(i, depths, digits=40):
    tables = zeta3_tables_small(i)
    return [bridge_identity(i, d, digits, tables) for d in depths]


def is_decreasing(results):
    """Strict decrease of residuals, decided on ball endpoints."""
    return all(b.residual.upper < a.residual.lower for a, b in zip(results, results[1:]))

