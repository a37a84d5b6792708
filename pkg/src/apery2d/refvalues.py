"""Reference values for zeta(3), Hurwitz zeta(s, x), zeta(2) and log 2.

Hurwitz zeta is evaluated by Euler-Maclaurin summation in exact rational
arithmetic. With f(t) = (t + x)^-s the remainder after K correction terms is
bounded by

    |R| <= 2 zeta(2K) / (2 pi)^(2K) * (s)_(2K-1) * (M + x)^(1 - s - 2K)

which is turned into the ball radius. Nothing here depends on the tables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .ball import BallReal, _atanh_enclosure
from .errors import DomainError

# rational lower bound for 2*pi
_TWO_PI_LO = Fraction(628, 100)


_BERNOULLI = [Fraction(1)]


def bernoulli(n):
    """B_n with the B_1 = -1/2 convention."""
    table = _BERNOULLI
    for m in range(len(table), n + 1):
        table.append(-sum(comb(m + 1, k) * table[k] for k in range(m)) / (m + 1))
    return table[n]


def _rising(s, m):
    out = 1
    for k in range(m):
        out *= s + k
    return out


def _em_remainder(s, shift, K):
    # zeta(2K) <= zeta(2) < 2
    return Fraction(4) * _rising(s, 2 * K - 1) / (_TWO_PI_LO ** (2 * K) * shift ** (s + 2 * K - 1))


@lru_cache(maxsize=256)
def hurwitz_zeta(s, x, digits):
    """Ball for zeta(s, x) = sum_{n>=0} (n + x)^-s, integer s >= 2, rational x > 0."""
    x = Fraction(x)
    if s < 2:
        raise DomainError("s must be an integer >= 2")
    if x <= 0:
        raise DomainError(f"Hurwitz zeta needs x > 0, got {x}")
    target = Fraction(1, 10 ** (digits + 2))
    M = 10 + digits // 3
    while True:
        shift = M + x
        K = 1
        while _em_remainder(s, shift, K) > target and K <= 2 * M:
            K += 1
        if K <= 2 * M:
            break
        M *= 2
    # accumulate on a fixed grid with directed rounding, so denominators stay small
    scale = 10 ** (digits + 10)
    lo = hi = 0
    terms = [1 / (n + x) ** s for n in range(M)]
    terms.append(shift ** (1 - s) / (s - 1))
    terms.append(shift ** (-s) / 2)
    for k in range(1, K + 1):
        terms.append(bernoulli(2 * k) / factorial(2 * k) * _rising(s, 2 * k - 1) / shift ** (s + 2 * k - 1))
    for t in terms:
        num = t.numerator * scale
        lo += num // t.denominator
        hi += -((-num) // t.denominator)
    err = _em_remainder(s, shift, K)
    value_lo = Fraction(lo, scale) - err
    value_hi = Fraction(hi, scale) + err
    return BallReal.from_interval(value_lo, value_hi, digits)


def hurwitz_zeta3(x, digits):
    if digits < 10:
        raise DomainError("digits must be >= 10")
    return hurwitz_zeta(3, Fraction(x), digits)


def zeta3(digits):
    return hurwitz_zeta3(1, digits)


def zeta2_ref(digits):
    if digits < 10:
        raise DomainError("digits must be >= 10")
    return hurwitz_zeta(2, Fraction(1), digits)


@lru_cache(maxsize=64)
def log2_ref(digits):
    """log 2 = 2 atanh(1/3) = sum 2 / ((2k+1) 3^(2k+1)); tail bounded by 9/8 of the next term."""
    if digits < 10:
        raise DomainError("digits must be >= 10")
    lo, hi = _atanh_enclosure(Fraction(1, 3), digits + 10)
    return BallReal.from_interval(2 * lo, 2 * hi, digits)


def zeta2_targets(digits):
    """Named constants that the literal zeta(2) boundary series converge to."""
    z2 = zeta2_ref(digits)
    return {"zeta(2)": z2, "2*zeta(2)": z2 * 2, "zeta(2)/2": z2 * Fraction(1, 2)}


def constant_for(pair_name, digits):
    """Reference constant for the diagonal ratio of a preset, where one is known."""
    if pair_name == "zeta3":
        return zeta3(digits)
    if pair_name in ("log2-alt",):
        return log2_ref(digits)
    if pair_name == "zeta2":
        return zeta2_ref(digits)
    return None
