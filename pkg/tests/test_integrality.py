import math
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery2d.errors import UnsupportedPairError
from apery2d.integrality import (
    LCM,
    find_witness,
    lcm_growth,
    lcm_upto,
    primes_upto,
    verify_integrality,
    zlinear_decomposition,
)
from apery2d.polypair import PRESETS
from apery2d.table import build_pq

Z = PRESETS["zeta3"]


@given(st.integers(1, 400))
@settings(max_examples=80, deadline=None)
def test_lcm_matches_fold(n):
    want = reduce(math.lcm, range(1, n + 1), 1)
    assert lcm_upto(n) == want == LCM[n]


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_upto(1) == []


@pytest.mark.parametrize("ij,x,m", [((2, 1), 5, 8), ((2, 2), 0, 1), ((3, 2), 22, 27)])
def test_witness_examples(ij, x, m):
    w = find_witness(Z, *ij)
    assert (w.x, abs(w.modulus)) == (x, m)
    assert w.verify(Z)


@given(st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=80, deadline=None)
def test_witness_congruences_hold(i, j):
    assert find_witness(Z, i, j).verify(Z)


def test_witness_needs_unit_edges():
    with pytest.raises(UnsupportedPairError):
        find_witness(PRESETS["zeta2"], 2, 1)


@pytest.fixture(scope="module")
def pq():
    return build_pq(Z, 30, 30)


def test_decomposition_examples(pq):
    p, q = pq
    assert zlinear_decomposition(Z, q, 2, 1) == (2, 5, -2)
    assert zlinear_decomposition(Z, p, 1, 1) == (6, 0, -1)


def test_strict_mode(pq):
    p, q = pq
    rep = verify_integrality(q, p, 30)
    assert rep.passed and rep.checked == 31 * 31 and rep.exponent == 3


def test_strict_mode_reports_first_failure(pq):
    p, q = pq
    # p itself is not integral; swapping the roles must fail at the first cell with a denominator
    rep = verify_integrality(p, q, 30)
    assert not rep.passed and rep.first_failure["table"] == "q"
    assert (rep.first_failure["i"], rep.first_failure["j"]) == (0, 2)


def test_empirical_mode_for_zeta2():
    p, q = build_pq(PRESETS["zeta2"], 20, 20)
    rep = verify_integrality(q, p, 20, "empirical")
    assert all(d == 1 for row in rep.ledger["q"]["denominators"] for d in row)
    anti = rep.ledger["p"]["antidiagonals"]
    assert len(anti) == 41
    assert all(a["d_s_exponent"] is not None and a["d_s_exponent"] <= 2 for a in anti)


def test_lcm_growth():
    g = dict(lcm_growth(100))
    assert abs(float(g[10]) - 0.78320) < 1e-5
    assert abs(float(g[100]) - 0.94045) < 1e-5
