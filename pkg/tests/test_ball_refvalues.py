from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery2d.ball import BallReal, log_ball
from apery2d.errors import DomainError
from apery2d.refvalues import bernoulli, hurwitz_zeta3, log2_ref, zeta2_ref, zeta3


def mp_contains(ball, value, dps):
    with mpmath.workdps(dps):
        lo = mpmath.mpf(ball.lower.numerator) / ball.lower.denominator
        hi = mpmath.mpf(ball.upper.numerator) / ball.upper.denominator
        return lo <= value <= hi


balls = st.builds(
    lambda m, r: BallReal(m, r, 6),
    st.integers(-10**7, 10**7),
    st.integers(0, 10**5),
)


@given(balls, balls)
@settings(max_examples=100, deadline=None)
def test_mul_encloses_every_endpoint_product(a, b):
    c = a * b
    for x in (a.lower, a.upper):
        for y in (b.lower, b.upper):
            assert c.contains(x * y)


@given(balls, balls, balls)
@settings(max_examples=60, deadline=None)
def test_association_orders_overlap(a, b, c):
    assert ((a + b) * c).overlaps(a * c + b * c)
    assert ((a * b) * c).overlaps(a * (b * c))


@given(balls, st.fractions(min_value=-100, max_value=100))
@settings(max_examples=60, deadline=None)
def test_exact_scaling_encloses(a, c):
    s = a * c
    assert s.contains(a.lower * c) and s.contains(a.upper * c)


def test_self_difference():
    x = BallReal(123456, 7, 4)
    d = x - x
    assert d.mid == 0 and d.rad >= 0 and d.contains(0)


def test_sqrt2_squared():
    r = BallReal.exact(2, 40).sqrt()
    assert (r * r).contains(2)
    assert abs(float(r) - 2**0.5) < 1e-15


def test_division_and_log_domains():
    z = BallReal(1, 5, 3)
    with pytest.raises(DomainError):
        BallReal.exact(1, 3) / z
    with pytest.raises(DomainError):
        z.log()
    with pytest.raises(DomainError):
        BallReal(-10, 1, 3).root(3)


@pytest.mark.parametrize("x", [Fraction(1, 7), Fraction(2), Fraction(17 * 10**9, 3), Fraction(999, 1000)])
def test_log_against_mpmath(x):
    b = log_ball(x, 50)
    with mpmath.workdps(80):
        assert mp_contains(b, mpmath.log(mpmath.mpf(x.numerator) / x.denominator), 80)


@pytest.mark.parametrize("n", [2, 3, 50])
def test_root_against_mpmath(n):
    x = BallReal.exact(Fraction(314159, 1000), 40)
    with mpmath.workdps(60):
        assert mp_contains(x.root(n), mpmath.root(mpmath.mpf(314159) / 1000, n), 60)


def test_pow():
    b = BallReal.exact(Fraction(-3, 2), 10) ** 3
    assert b.contains(Fraction(-27, 8))
    assert (BallReal(0, 10**9, 10) ** 2).contains(0)


def test_bernoulli():
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]
    assert bernoulli(3) == 0


@pytest.mark.parametrize("x", [Fraction(1), Fraction(2), Fraction(3, 2), Fraction(1, 3), Fraction(7, 2), Fraction(1, 100)])
def test_hurwitz_against_mpmath(x):
    b = hurwitz_zeta3(x, 60)
    assert b.radius <= Fraction(1, 10**60)
    with mpmath.workdps(90):
        assert mp_contains(b, mpmath.zeta(3, mpmath.mpf(x.numerator) / x.denominator), 90)


def test_hurwitz_shift_identities():
    z = zeta3(50)
    assert hurwitz_zeta3(2, 50).overlaps(z - 1)
    assert hurwitz_zeta3(Fraction(3, 2), 50).overlaps(z * 7 - 8)
    assert zeta3(15).mid_str() == "1.202056903159594"


def test_refinement_never_widens():
    coarse, fine = zeta3(30), zeta3(60)
    assert coarse.lower <= fine.lower and fine.upper <= coarse.upper


def test_other_constants():
    with mpmath.workdps(80):
        assert mp_contains(log2_ref(60), mpmath.log(2), 80)
        assert mp_contains(zeta2_ref(60), mpmath.pi**2 / 6, 80)
    assert log2_ref(15).mid_str() == "0.693147180559945"
    assert zeta2_ref(15).mid_str() == "1.644934066848226"


def test_domain_errors():
    with pytest.raises(DomainError):
        hurwitz_zeta3(0, 20)
    with pytest.raises(DomainError):
        hurwitz_zeta3(1, 5)
