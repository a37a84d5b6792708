from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery2d.errors import InconsistentBoundaryError, TableSizeError, UnsupportedPairError
from apery2d.polypair import PRESETS
from apery2d.table import (
    SERIES,
    UNIT,
    all_column_defects,
    boundary_values,
    build,
    build_pq,
    check_column_recurrence,
    check_row_recurrence,
    custom_boundary,
    inverse_step,
    rec1_defect,
    step_row,
    symmetry_defect,
)

Z = PRESETS["zeta3"]


@pytest.fixture(scope="module")
def pq():
    return build_pq(Z, 25, 25)


def test_small_values(pq):
    p, q = pq
    assert q[1, 1] == 5 and q[2, 2] == 73 and q[2, 1] == 13
    assert p[1, 1] == 6 and p[2, 2] == Fraction(351, 4) and p[2, 1] == Fraction(125, 8)
    assert q[3, 3] == 1445 and q[4, 4] == 33001  # Apery numbers


def test_boundaries():
    row, col = boundary_values(Z, SERIES, 4, 4)
    assert row == col == [0, 1, Fraction(9, 8), Fraction(251, 216), Fraction(2035, 1728)]
    assert boundary_values(Z, UNIT, 2, 3) == ([1, 1, 1], [1, 1, 1, 1])


def test_symmetry_and_all_recurrences(pq):
    for t in pq:
        assert symmetry_defect(t) is None
        assert rec1_defect(t) is None
        assert all_column_defects(t) == {}
        assert all(check_row_recurrence(Z, t.rows[i], i) for i in range(26))
        assert check_column_recurrence(t, 5)


def test_inverse_step_recovers_previous_row(pq):
    for t in pq:
        for i in (1, 2, 7, 25):
            assert inverse_step(Z, t.rows[i], i) == t.rows[i - 1]


def test_step_row_without_column_value(pq):
    p, _ = pq
    assert step_row(Z, p.rows[4], 5) == p.rows[5]


def test_streaming_matches_full(pq):
    p, q = pq
    ps, qs = build_pq(Z, 25, 26, mode="streaming")
    assert ps.diagonal == [p[n, n] for n in range(26)]
    assert qs.superdiag[:25] == [q[n, n + 1] for n in range(25)]
    assert qs.col1 == [q[i, 1] for i in range(26)]
    with pytest.raises(KeyError):
        qs[5, 9]


def test_bad_boundary_is_detected():
    # row 0 that breaks the row recurrence
    bad = custom_boundary(lambda j: Fraction(j * j), lambda i: Fraction(i * i))
    with pytest.raises(InconsistentBoundaryError) as exc:
        build(Z, bad, 5, 5)
    assert exc.value.i == 0


def test_boundary_corner_must_agree():
    with pytest.raises(ValueError):
        custom_boundary(lambda j: 1, lambda i: 0)


def test_pair_failing_shift_identity_is_refused():
    with pytest.raises(UnsupportedPairError):
        build(PRESETS["zeta2-literal"], UNIT, 3, 3)


def test_cell_budget():
    with pytest.raises(TableSizeError):
        build(Z, UNIT, 100, 100, max_cells=1000)


@given(st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=25, deadline=None)
def test_linear_combination_of_boundaries(a, b):
    # the construction is linear in the boundary data
    p, q = build_pq(Z, 6, 6)
    mix = custom_boundary(
        lambda j: a * boundary_values(Z, SERIES, j, 0)[0][j] + b,
        lambda i: a * boundary_values(Z, SERIES, 0, i)[1][i] + b,
    )
    t = build(Z, mix, 6, 6)
    assert all(t[i, j] == a * p[i, j] + b * q[i, j] for i in range(7) for j in range(7))


@pytest.mark.parametrize("name", ["log2-alt", "log2-paper", "zeta2"])
def test_other_presets_build(name):
    p, q = build_pq(PRESETS[name], 15, 15)
    assert rec1_defect(p) is None and rec1_defect(q) is None
    assert all_column_defects(q) == {}
