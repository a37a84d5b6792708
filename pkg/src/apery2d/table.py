"""Two-dimensional tables u[i][j] solving the matrix recurrence

    [ f(i,j)  g(0,j) ] [ u[i-1][j]   ]            [ u[i][j]   ]
    [ f(0,j)  g(i,j) ] [ u[i-1][j-1] ]  = f(i,0)  [ u[i][j-1] ]

built row by row from a boundary on row 0 and column 0. The top row of the
system produces new entries; the bottom row is asserted. Entries are exact
``Fraction`` values throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable

from .errors import (
    InconsistentBoundaryError,
    NonInvertibleStepError,
    TableSizeError,
    UnsupportedPairError,
)
from .polypair import PolyPair, verify_conditions

DEFAULT_MAX_CELLS = 2_000_000


@dataclass(frozen=True)
class BoundarySpec:
    kind: str  # "unit" | "series" | "custom"
    row_rule: Callable | None = None  # j -> u[0][j] for custom
    col_rule: Callable | None = None  # i -> u[i][0] for custom
    label: str = ""

    @property
    def name(self):
        return self.label or self.kind


UNIT = BoundarySpec("unit")
SERIES = BoundarySpec("series")


def custom_boundary(row_rule, col_rule, label="custom"):
    if row_rule(0) != col_rule(0):
        raise ValueError("row and column rules disagree at the corner u[0][0]")
    return BoundarySpec("custom", row_rule, col_rule, label)


def _series(lead, ratio, n_max, which):
    out = [Fraction(0)]
    prod = Fraction(1)
    total = Fraction(0)
    for n in range(1, n_max + 1):
        a = lead(n)
        if a == 0:
            raise ZeroDivisionError(f"{which}: leading value vanishes at n = {n}")
        total += prod / a
        out.append(total)
        prod *= ratio(n)
    return out


def boundary_values(pair, spec, j_max, i_max):
    """Row 0 (j = 0..j_max) and column 0 (i = 0..i_max) of the table."""
    if spec.kind == "unit":
        return [Fraction(1)] * (j_max + 1), [Fraction(1)] * (i_max + 1)
    if spec.kind == "series":
        f, g = pair.f, pair.g

        def row_ratio(k):
            return -g(0, k) / f(0, k)

        def col_ratio(k):
            return g(k, 0) / f(k, 0)

        row = _series(lambda n: f(0, n), row_ratio, j_max, "f(0,n)")
        col = _series(lambda n: f(n, 0), col_ratio, i_max, "f(n,0)")
        return row, col
    if spec.kind == "custom":
        row = [Fraction(spec.row_rule(j)) for j in range(j_max + 1)]
        col = [Fraction(spec.col_rule(i)) for i in range(i_max + 1)]
        return row, col
    raise ValueError(f"unknown boundary kind {spec.kind!r}")


@lru_cache(maxsize=200_000)
def _coeffs(pair, i, j):
    """Reduced coefficients for cell (i, j): f(i',j'), g(0,j'), f(0,j'), g(i',j'), f(i',0), g(i',0)."""
    d = gcd(i, j) or 1
    a, b = i // d, j // d
    f, g = pair.f, pair.g
    return (_norm(f(a, b)), _norm(g(0, b)), _norm(f(0, b)), _norm(g(a, b)), _norm(f(a, 0)), _norm(g(a, 0)))


def _norm(x):
    return int(x) if x.denominator == 1 else x


@lru_cache(maxsize=200_000)
def _val(pair, which, i, j):
    return _norm(getattr(pair, which)(i, j))


def step_row(pair, prev_row, i, first=None):
    """Row i from row i - 1.

    ``first`` is u[i][0] from the boundary; when omitted it is derived from the
    bottom equation at j = 1. Every bottom equation is asserted and a failure
    raises InconsistentBoundaryError.
    """
    if i < 1:
        raise ValueError("step_row needs i >= 1")
    n = len(prev_row)
    if first is None:
        fij, g0j, f0j, gij, fi0, _ = _coeffs(pair, i, 1)
        if fi0 == 0:
            raise ZeroDivisionError(f"f({i},0) vanishes")
        first = Fraction(f0j * prev_row[1] + gij * prev_row[0]) / fi0
    row = [Fraction(first)]
    for j in range(1, n):
        fij, g0j, f0j, gij, fi0, _ = _coeffs(pair, i, j)
        if fi0 == 0:
            raise ZeroDivisionError(f"reduced f(i',0) vanishes at ({i},{j})")
        up, diag = prev_row[j], prev_row[j - 1]
        if f0j * up + gij * diag != fi0 * row[j - 1]:
            raise InconsistentBoundaryError(
                f"bottom equation fails at ({i},{j}); row {i - 1} violates the row recurrence", i, j
            )
        row.append((fij * up + g0j * diag) / fi0)
    return row


def row_recurrence_defect(pair, row, i):
    """First j where f(0,j+1) u[j+1] = (f(i+1,j) - g(i+1,j+1)) u[j] + g(0,j) u[j-1] fails, else None."""
    for j in range(1, len(row) - 1):
        lhs = _val(pair, "f", 0, j + 1) * row[j + 1]
        rhs = (_val(pair, "f", i + 1, j) - _val(pair, "g", i + 1, j + 1)) * row[j] + _val(pair, "g", 0, j) * row[j - 1]
        if lhs != rhs:
            return j
    return None


def check_row_recurrence(pair, row, i):
    if len(row) < 3:
        raise ValueError("row needs at least 3 entries")
    return row_recurrence_defect(pair, row, i) is None


def inverse_step(pair, row, i):
    """Row i - 1 from row i through the adjugate system (uses cond1)."""
    if i < 1:
        raise ValueError("inverse_step needs i >= 1")
    out = [None] * len(row)
    for j in range(1, len(row)):
        fij, g0j, f0j, gij, fi0, gi0 = _coeffs(pair, i, j)
        if gi0 == 0:
            raise NonInvertibleStepError(f"reduced g(i',0) vanishes at ({i},{j})")
        out[j] = (gij * row[j] - g0j * row[j - 1]) / gi0
    fij, g0j, f0j, gij, fi0, gi0 = _coeffs(pair, i, 1)
    out[0] = (fij * row[0] - f0j * row[1]) / gi0
    for j in range(2, len(row)):
        fij, g0j, f0j, gij, fi0, gi0 = _coeffs(pair, i, j)
        if fij * row[j - 1] - f0j * row[j] != gi0 * out[j - 1]:
            raise InconsistentBoundaryError(f"inverse bottom equation fails at ({i},{j})", i, j)
    return [Fraction(x) for x in out]


def column_recurrence_defect(pair, rows, j):
    """First i where f(i+1,0) u[i+1][j-1] = (f(i,j) + g(i+1,j)) u[i][j-1] - g(i,0) u[i-1][j-1] fails."""
    for i in range(1, len(rows) - 1):
        lhs = _val(pair, "f", i + 1, 0) * rows[i + 1][j - 1]
        rhs = (_val(pair, "f", i, j) + _val(pair, "g", i + 1, j)) * rows[i][j - 1] - _val(pair, "g", i, 0) * rows[i - 1][j - 1]
        if lhs != rhs:
            return i
    return None


def check_column_recurrence(table, j):
    if table.rows is None:
        raise ValueError("column checks need a full table")
    if len(table.rows) < 3:
        raise ValueError("table needs at least 3 rows")
    return column_recurrence_defect(table.pair, table.rows, j) is None


@dataclass
class RationalTable:
    pair: PolyPair
    boundary: BoundarySpec
    I: int
    J: int
    mode: str = "full"
    rows: list | None = None
    diagonal: list = field(default_factory=list)  # u[n][n]
    superdiag: list = field(default_factory=list)  # u[n][n+1]
    col0: list = field(default_factory=list)
    col1: list = field(default_factory=list)
    last_rows: list = field(default_factory=list)  # streaming: rows I-1, I

    def __getitem__(self, ij):
        i, j = ij
        if self.rows is None:
            if i == j and i < len(self.diagonal):
                return self.diagonal[i]
            if j == i + 1 and i < len(self.superdiag):
                return self.superdiag[i]
            if j == 0:
                return self.col0[i]
            if j == 1:
                return self.col1[i]
            raise KeyError(f"entry ({i},{j}) is not retained in streaming mode")
        if not (0 <= i <= self.I and 0 <= j <= self.J):
            raise IndexError(f"({i},{j}) outside table 0..{self.I} x 0..{self.J}")
        return self.rows[i][j]

    def row(self, i):
        if self.rows is None:
            raise KeyError("rows are not retained in streaming mode")
        return self.rows[i]

    def to_dict(self):
        from .reports import fmt_q

        d = {
            "pair": self.pair.name,
            "boundary": self.boundary.name,
            "rows": self.I + 1,
            "cols": self.J + 1,
            "mode": self.mode,
        }
        if self.rows is not None:
            d["cells"] = [[fmt_q(x) for x in r] for r in self.rows]
        else:
            d["diagonal"] = [fmt_q(x) for x in self.diagonal]
        return d


def build(pair, spec, I, J, mode="full", check=True, max_cells=DEFAULT_MAX_CELLS):
    """Table for ``pair`` with boundary ``spec`` on indices 0..I x 0..J."""
    if I < 0 or J < 0:
        raise ValueError("table dimensions must be non-negative")
    if mode not in ("full", "streaming"):
        raise ValueError(f"mode must be 'full' or 'streaming', not {mode!r}")
    if mode == "full" and (I + 1) * (J + 1) > max_cells:
        raise TableSizeError(f"{(I + 1) * (J + 1)} cells exceed the budget of {max_cells}")
    rep = verify_conditions(pair, sample_bound=1)
    if not rep.admissible:
        raise UnsupportedPairError(f"pair {pair.name} fails cond1/cond2; the construction needs both")
    row0, col0 = boundary_values(pair, spec, J, I)
    if row0[0] != col0[0]:
        raise InconsistentBoundaryError("row and column boundaries disagree at (0,0)", 0, 0)
    if check and len(row0) >= 3:
        j = row_recurrence_defect(pair, row0, 0)
        if j is not None:
            raise InconsistentBoundaryError(f"boundary row 0 violates the row recurrence at j = {j}", 0, j)

    table = RationalTable(pair, spec, I, J, mode)
    full = [row0] if mode == "full" else None
    window = [row0]
    _record(table, 0, row0)
    prev = row0
    for i in range(1, I + 1):
        cur = step_row(pair, prev, i, first=col0[i])
        if check and len(cur) >= 3:
            j = row_recurrence_defect(pair, cur, i)
            if j is not None:
                raise InconsistentBoundaryError(f"row {i} violates the row recurrence at j = {j}", i, j)
        _record(table, i, cur)
        if full is not None:
            full.append(cur)
        else:
            window = (window + [cur])[-3:]
            if check and len(window) == 3:
                _check_window(pair, window, i - 1)
        prev = cur
    table.rows = full
    table.last_rows = full[-2:] if full is not None else window[-2:]
    return table


def _record(table, i, row):
    table.col0.append(row[0])
    if len(row) > 1:
        table.col1.append(row[1])
    if i < len(row):
        table.diagonal.append(row[i])
    if i + 1 < len(row):
        table.superdiag.append(row[i + 1])


def _check_window(pair, window, i):
    # column equation centred on row i, all j
    lo, mid, hi = window
    for j in range(1, len(mid) + 1):
        lhs = _val(pair, "f", i + 1, 0) * hi[j - 1]
        rhs = (_val(pair, "f", i, j) + _val(pair, "g", i + 1, j)) * mid[j - 1] - _val(pair, "g", i, 0) * lo[j - 1]
        if lhs != rhs:
            raise InconsistentBoundaryError(f"column equation fails at ({i},{j})", i, j)


def build_pq(pair, I, J, mode="full", check=True, p_boundary=SERIES, q_boundary=UNIT):
    """The (p, q) tables: series boundary for p, unit boundary for q."""
    return build(pair, p_boundary, I, J, mode, check), build(pair, q_boundary, I, J, mode, check)


def symmetry_defect(table):
    """First (i, j) with u[i][j] != u[j][i] inside the square part, else None."""
    n = min(table.I, table.J)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if table.rows[i][j] != table.rows[j][i]:
                return (i, j)
    return None


def all_column_defects(table):
    """{j: first failing i} over every column j >= 1 that has a predecessor."""
    out = {}
    for j in range(1, table.J + 1):
        i = column_recurrence_defect(table.pair, table.rows, j)
        if i is not None:
            out[j] = i
    return out


def rec1_defect(table):
    """First interior (i, j) where either row of the matrix recurrence fails."""
    pair, rows = table.pair, table.rows
    for i in range(1, table.I + 1):
        fi0 = _val(pair, "f", i, 0)
        for j in range(1, table.J + 1):
            up, diag = rows[i - 1][j], rows[i - 1][j - 1]
            top = _val(pair, "f", i, j) * up + _val(pair, "g", 0, j) * diag
            bot = _val(pair, "f", 0, j) * up + _val(pair, "g", i, j) * diag
            if top != fi0 * rows[i][j] or bot != fi0 * rows[i][j - 1]:
                return (i, j)
    return None
