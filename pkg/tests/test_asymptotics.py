from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery2d import asymptotics as asy
from apery2d.errors import InsufficientPrecisionError
from apery2d.polypair import PRESETS

q_elems = st.builds(asy.QSqrt2, st.fractions(-20, 20, max_denominator=9), st.fractions(-20, 20, max_denominator=9))


@given(q_elems, q_elems, q_elems)
@settings(max_examples=60, deadline=None)
def test_qsqrt2_field_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).norm() == a.norm() * b.norm()
    if b.norm() != 0:
        assert (a / b) * b == a
    assert abs(float(a * b) - float(a) * float(b)) < 1e-6 * (1 + abs(float(a) * float(b)))


def test_transfer_matrix_closed_form():
    assert asy.transfer_matrix(1).entries == (Fraction(125, 8), Fraction(-21, 8), 6, -1)
    for n in range(1, 40):
        assert asy.pair_transfer_matrix(PRESETS["zeta3"], n) == asy.transfer_matrix(n)
        assert asy.transfer_matrix(n).det() == Fraction(n**3, (n + 1) ** 3)


def test_transfer_acts_on_tables():
    p, q = asy.zeta3_tables(40, mode="full")
    assert asy.transfer_defect(p, q, 40) is None


def test_limit_matrix():
    eig = asy.limit_eigen()
    assert [lam for lam, _ in eig] == [asy.LAMBDA_PLUS, asy.LAMBDA_MINUS]
    assert asy.LIMIT_A.trace() == 34 and asy.LIMIT_A.det() == 1
    # convergence to the limit is O(1/n)
    dist = [max(abs(float(a - b)) for a, b in zip(asy.transfer_matrix(n).entries, asy.LIMIT_A.entries))
            for n in (100, 1000, 10000)]
    assert dist[0] > dist[1] > dist[2] and 0.9 < (dist[0] * 100) / (dist[2] * 10000) < 1.1


def test_diagonal_recurrence():
    p, q = asy.zeta3_tables(30)
    assert asy.apery_diagonal_check(q, 30)["passed"] and asy.apery_diagonal_check(p, 30)["passed"]
    assert q.diagonal[:5] == [1, 5, 73, 1445, 33001]


def test_rates_reported():
    p, q = asy.zeta3_tables(40)
    rep = asy.empirical_rate(q.diagonal[1:41], float(asy.LAMBDA_PLUS), start=1)
    assert rep.ratio_deviation < 0.05
    assert rep.to_dict()["n_range"] == [1, 40]
    with pytest.raises(ValueError):
        asy.empirical_rate([1, 2], 3)


def test_certificate_small():
    cert = asy.irrationality_certificate(2)
    a2, b2 = cert.rows[1].a, cert.rows[1].b
    assert (a2, b2) == (702, 584)
    assert cert.ok and cert.nonzero


def test_certificate_records_prime_jumps():
    cert = asy.irrationality_certificate(20, 60)
    assert cert.nonzero and cert.tends_to_zero
    # d_n gains a factor p at each prime p >= 5 and d_n^3 |eps| grows there
    assert cert.increases == [7, 11, 13, 17, 19]
    assert abs(cert.limit.upper - Fraction(-52549, 100000)) < Fraction(1, 10**4)


def test_certificate_precision_error():
    with pytest.raises(InsufficientPrecisionError):
        asy.irrationality_certificate(50, 60)


def test_eigen_direction():
    p, q = asy.zeta3_tables(31)
    r = asy.eigen_direction(p, q, 30)
    assert abs(float(r) - float(asy.QSqrt2(3, -2))) < 0.01
