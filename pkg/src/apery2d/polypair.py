"""Homogeneous bivariate polynomial pairs (f, g) and their structural conditions.

The four conditions checked here are

    cond1   f(i,j) g(i,j) = f(i,0) g(i,0) + f(0,j) g(0,j)
    cond2   f(i+1,j) - f(i,j+1) = g(i+1,j+1) - g(i,j)
    cond3   f(0,x), f(x,0) in {x^d, -x^d}
    cond4   f(i,j) - f(0,j) > g(i,j) - g(0,j)   for i, j >= 1

cond1 and cond2 are decided by exact polynomial expansion.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path

from .errors import NonHomogeneousError, PairFormatError, SearchSpaceTooLarge
from .reports import fmt_q, parse_q

# Sparse polynomials in two variables: {(a, b): coeff} for coeff * i^a * j^b.


def _clean(p):
    return {k: v for k, v in p.items() if v != 0}


def poly_add(p, q, sign=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return _clean(out)


def poly_mul(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, 0) + c1 * c2
    return _clean(out)


def poly_shift(p, di, dj):
    """Substitute i -> i + di, j -> j + dj."""
    out = {}
    for (a, b), c in p.items():
        for s in range(a + 1):
            ca = comb(a, s) * di ** (a - s)
            if ca == 0:
                continue
            for t in range(b + 1):
                cb = comb(b, t) * dj ** (b - t)
                if cb:
                    out[(s, t)] = out.get((s, t), 0) + c * ca * cb
    return _clean(out)


def poly_restrict(p, var):
    """Set variable ``var`` ("i" or "j") to zero."""
    idx = 0 if var == "i" else 1
    return {k: v for k, v in p.items() if k[idx] == 0}


@dataclass(frozen=True)
class Poly2:
    """Homogeneous polynomial sum c_ab i^a j^b with a + b = degree."""

    degree: int
    terms: tuple  # sorted ((a, b, Fraction), ...), zero coefficients dropped

    @classmethod
    def from_map(cls, coeffs, degree):
        terms = []
        for (a, b), c in coeffs.items():
            if a < 0 or b < 0 or a + b != degree:
                raise NonHomogeneousError((a, b), degree)
            c = Fraction(c)
            if c:
                terms.append((a, b, c))
        terms.sort(key=lambda t: (-t[0], t[1]))
        return cls(degree, tuple(terms))

    @property
    def coeffs(self):
        return {(a, b): c for a, b, c in self.terms}

    def __call__(self, i, j):
        return sum((c * i**a * j**b for a, b, c in self.terms), Fraction(0))

    def is_zero(self):
        return not self.terms

    def swapped(self):
        return Poly2.from_map({(b, a): c for a, b, c in self.terms}, self.degree)

    def negated(self):
        return Poly2.from_map({(a, b): -c for a, b, c in self.terms}, self.degree)

    def has_mixed_terms(self):
        return any(a and b for a, b, _ in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, b, c in self.terms:
            mono = "*".join(x for x in (_pow("i", a), _pow("j", b)) if x)
            if mono:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            else:
                coef = str(c)
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _pow(v, e):
    return "" if e == 0 else v if e == 1 else f"{v}^{e}"


@dataclass(frozen=True)
class PolyPair:
    f: Poly2
    g: Poly2
    name: str = "pair"

    def __post_init__(self):
        if self.f.degree != self.g.degree:
            raise ValueError(f"degrees differ: {self.f.degree} vs {self.g.degree}")

    @property
    def degree(self):
        return self.f.degree

    def eval(self, which, i, j):
        if which not in ("f", "g"):
            raise ValueError(f"which must be 'f' or 'g', not {which!r}")
        return getattr(self, which)(i, j)

    def to_dict(self):
        return {
            "name": self.name,
            "degree": self.degree,
            "f": [[a, b, fmt_q(c)] for a, b, c in self.f.terms],
            "g": [[a, b, fmt_q(c)] for a, b, c in self.g.terms],
        }


def make_pair(coeffs_f, coeffs_g, degree, name="pair"):
    """Build a pair from exponent->coefficient maps. Conditions are not checked."""
    return PolyPair(Poly2.from_map(coeffs_f, degree), Poly2.from_map(coeffs_g, degree), name)


def evaluate(pair, which, i, j):
    return pair.eval(which, Fraction(i), Fraction(j))


# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class Cond4Status:
    status: str  # "proved-by-coefficients" | "sampled-true" | "false"
    bound: int | None = None
    counterexample: tuple | None = None

    @property
    def holds(self):
        return self.status != "false"

    def to_dict(self):
        d = {"status": self.status}
        if self.bound is not None:
            d["bound"] = self.bound
        if self.counterexample is not None:
            d["counterexample"] = list(self.counterexample)
        return d


@dataclass(frozen=True)
class ConditionReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: Cond4Status
    symmetric: dict = field(default_factory=dict)

    @property
    def admissible(self):
        return self.cond1 and self.cond2

    def to_dict(self):
        return {
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "cond4": self.cond4.to_dict(),
            "admissible": self.admissible,
            "swap_symmetry": dict(self.symmetric),
        }


def cond1_residual(pair):
    """f g - f(i,0) g(i,0) - f(0,j) g(0,j), expanded."""
    f, g = pair.f.coeffs, pair.g.coeffs
    fg = poly_mul(f, g)
    rhs = poly_add(
        poly_mul(poly_restrict(f, "j"), poly_restrict(g, "j")),
        poly_mul(poly_restrict(f, "i"), poly_restrict(g, "i")),
    )
    return poly_add(fg, rhs, -1)


def cond2_residual(pair):
    """f(i+1,j) - f(i,j+1) - g(i+1,j+1) + g(i,j), expanded."""
    f, g = pair.f.coeffs, pair.g.coeffs
    lhs = poly_add(poly_shift(f, 1, 0), poly_shift(f, 0, 1), -1)
    rhs = poly_add(poly_shift(g, 1, 1), g, -1)
    return poly_add(lhs, rhs, -1)


def check_cond3(pair):
    d = pair.degree
    edge_i = pair.f.coeffs.get((d, 0), 0)
    edge_j = pair.f.coeffs.get((0, d), 0)
    return abs(edge_i) == 1 and abs(edge_j) == 1


def check_cond4(pair, sample_bound):
    # (f - g)(i,j) - (f - g)(0,j): nonnegative coefficients, not all zero, is
    # strictly positive on i, j >= 1.
    diff = poly_add(pair.f.coeffs, pair.g.coeffs, -1)
    reduced = {k: v for k, v in diff.items() if k[0] > 0}
    if reduced and all(v > 0 for v in reduced.values()):
        return Cond4Status("proved-by-coefficients")
    for i in range(1, sample_bound + 1):
        for j in range(1, sample_bound + 1):
            lhs = pair.f(i, j) - pair.f(0, j)
            rhs = pair.g(i, j) - pair.g(0, j)
            if not lhs > rhs:
                return Cond4Status("false", counterexample=(i, j))
    return Cond4Status("sampled-true", bound=sample_bound)


def swap_symmetry(pair):
    """Whether f(j,i) = f(i,j) and g(j,i) = -g(i,j) as polynomials."""
    return {
        "f_symmetric": pair.f.swapped() == pair.f,
        "g_antisymmetric": pair.g.swapped() == pair.g.negated(),
    }


def verify_conditions(pair, sample_bound=50):
    return ConditionReport(
        cond1=not cond1_residual(pair),
        cond2=not cond2_residual(pair),
        cond3=check_cond3(pair),
        cond4=check_cond4(pair, sample_bound),
        symmetric=swap_symmetry(pair),
    )


# ---------------------------------------------------------------------------
# presets and the pair-definition file format

_H = Fraction(1, 2)

PRESETS = {
    "zeta3": make_pair(
        {(3, 0): 1, (2, 1): 2, (1, 2): 2, (0, 3): 1},
        {(3, 0): 1, (2, 1): -2, (1, 2): 2, (0, 3): -1},
        3, "zeta3",
    ),
    # g = i - j: the series boundary is harmonic and cond4 fails at (1,1).
    "log2-paper": make_pair({(1, 0): 1, (0, 1): 1}, {(1, 0): 1, (0, 1): -1}, 1, "log2-paper"),
    "log2-alt": make_pair({(1, 0): 1, (0, 1): 1}, {(1, 0): -1, (0, 1): 1}, 1, "log2-alt"),
    # zeta2-literal below has the opposite sign of g and fails cond2.
    "zeta2": make_pair(
        {(2, 0): 1, (1, 1): 1, (0, 2): _H}, {(2, 0): 1, (1, 1): -1, (0, 2): _H}, 2, "zeta2"
    ),
    "zeta2-literal": make_pair(
        {(2, 0): 1, (1, 1): 1, (0, 2): _H}, {(2, 0): -1, (1, 1): 1, (0, 2): -_H}, 2, "zeta2-literal"
    ),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown pair {name!r}; presets are {', '.join(PRESETS)}") from None


def pair_from_dict(data):
    try:
        name = str(data["name"])
        degree = int(data["degree"])
        maps = []
        for key in ("f", "g"):
            m = {}
            for entry in data[key]:
                a, b, c = entry
                m[(int(a), int(b))] = m.get((int(a), int(b)), 0) + parse_q(c)
            maps.append(m)
    except (KeyError, TypeError, ValueError) as exc:
        raise PairFormatError(f"malformed pair definition: {exc}") from exc
    try:
        return make_pair(maps[0], maps[1], degree, name)
    except (NonHomogeneousError, ValueError) as exc:
        raise PairFormatError(str(exc)) from exc


def load_pair_file(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PairFormatError(f"cannot read pair file {path}: {exc}") from exc
    return pair_from_dict(data)


def dump_pair(pair):
    return json.dumps(pair.to_dict(), indent=2) + "\n"


def resolve_pair(spec):
    """Preset name or ``file:PATH``."""
    if spec.startswith("file:"):
        return load_pair_file(spec[5:])
    return get_preset(spec)


# ---------------------------------------------------------------------------
# bounded-height search

DEFAULT_SEARCH_CAP = 5_000_000


def _basis(degree):
    # index k <-> monomial i^(degree-k) j^k
    return [(degree - k, k) for k in range(degree + 1)]


def _vec_to_map(vec, degree):
    return {m: c for m, c in zip(_basis(degree), vec) if c}


def _linear_matrix(op, degree):
    """Matrix (dict row-monomial -> list over basis) of a linear poly operator."""
    cols = [op({m: 1}) for m in _basis(degree)]
    rows = sorted({k for c in cols for k in c})
    return rows, [[Fraction(c.get(r, 0)) for c in cols] for r in rows]


def _solve_setup(degree):
    """Particular-solution data for cond2 viewed as a linear equation in g.

    g -> g(i+1,j+1) - g(i,j) has one-dimensional kernel spanned by (i-j)^d,
    whose i^d coefficient is 1. Pinning g's i^d coefficient to zero leaves an
    injective map; pick `degree` independent equations and invert them.
    """
    rows, G = _linear_matrix(lambda g: poly_add(poly_shift(g, 1, 1), g, -1), degree)
    drows, D = _linear_matrix(lambda f: poly_add(poly_shift(f, 1, 0), poly_shift(f, 0, 1), -1), degree)
    all_rows = sorted(set(rows) | set(drows))
    Gfull = [[Fraction(0)] * (degree + 1) for _ in all_rows]
    Dfull = [[Fraction(0)] * (degree + 1) for _ in all_rows]
    for r, row in zip(rows, G):
        Gfull[all_rows.index(r)] = row
    for r, row in zip(drows, D):
        Dfull[all_rows.index(r)] = row
    Gr = [row[1:] for row in Gfull]
    # choose pivot rows greedily by elimination
    pivots, basis_rows = [], []
    for idx, row in enumerate(Gr):
        v = list(row)
        for prow, pcol in basis_rows:
            if v[pcol]:
                fac = v[pcol] / prow[pcol]
                v = [a - fac * b for a, b in zip(v, prow)]
        nz = [c for c, a in enumerate(v) if a]
        if nz:
            basis_rows.append((v, nz[0]))
            pivots.append(idx)
        if len(pivots) == degree:
            break
    sub = [Gr[r] for r in pivots]
    inv = _invert(sub)
    kernel = [comb(degree, k) * (-1) ** k for k in range(degree + 1)]
    return Gfull, Dfull, pivots, inv, kernel


def _invert(m):
    n = len(m)
    a = [list(row) + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [x - fac * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _cond1_fast(fv, gv):
    # With coefficient vectors over i^(d-k) j^k, cond1 says every coefficient
    # of the product except the two pure powers vanishes.
    d = len(fv) - 1
    for s in range(1, 2 * d):
        acc = 0
        for k in range(max(0, s - d), min(s, d) + 1):
            acc += fv[k] * gv[s - k]
        if acc:
            return False
    return True


def search_space_size(degree, height):
    return (2 * height + 1) ** (degree + 2)


def search_pairs(degree, height, cap=DEFAULT_SEARCH_CAP):
    """All integer pairs with coefficients in [-height, height] satisfying cond1 and cond2.

    For each f, cond2 fixes g up to adding c (i - j)^degree, so only
    (2h+1)^(d+1) * (2h+1) candidates are examined. Pairs are reported in
    primitive form (coefficients divided by their common gcd, which keeps sign)
    and sorted by (f, g) coefficient vectors.
    """
    if degree < 1 or height < 1:
        raise ValueError("degree and height must be >= 1")
    size = search_space_size(degree, height)
    if size > cap:
        raise SearchSpaceTooLarge(size, cap)
    Gfull, Dfull, pivots, inv, kernel = _solve_setup(degree)
    rng = range(-height, height + 1)
    found = set()
    for fv in itertools.product(rng, repeat=degree + 1):
        if not any(fv):
            continue
        df = [sum(c * x for c, x in zip(row, fv)) for row in Dfull]
        rhs = [df[r] for r in pivots]
        tail = [sum(a * b for a, b in zip(row, rhs)) for row in inv]
        g0 = [Fraction(0)] + tail
        if any(x.denominator != 1 for x in g0):
            continue
        if any(sum(a * b for a, b in zip(row, g0)) != d for row, d in zip(Gfull, df)):
            continue
        g0 = [int(x) for x in g0]
        for c in rng:
            gv = [a + c * k for a, k in zip(g0, kernel)]
            if not any(gv) or max(abs(x) for x in gv) > height:
                continue
            if _cond1_fast(fv, gv):
                content = math.gcd(*fv, *gv)
                found.add((tuple(x // content for x in fv), tuple(x // content for x in gv)))
    out = []
    for n, (fv, gv) in enumerate(sorted(found)):
        out.append(
            make_pair(_vec_to_map(fv, degree), _vec_to_map(gv, degree), degree, f"d{degree}h{height}-{n}")
        )
    return out


def is_nontrivial(pair):
    """False for the separable family f = a i^d + b j^d, g = a i^d - b j^d.

    That family satisfies cond1 and cond2 in every degree; a pair is counted as
    nontrivial when f or g carries a mixed monomial.
    """
    return pair.f.has_mixed_terms() or pair.g.has_mixed_terms()
