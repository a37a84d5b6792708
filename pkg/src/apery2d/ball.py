"""Midpoint-radius real balls on a decimal fixed-point grid.

A ball with ``digits = D`` stores integers ``mid`` and ``rad`` and represents
every real in ``[(mid - rad) / 10**D, (mid + rad) / 10**D]``. Every operation
returns a ball that contains the exact result for all inputs in the operand
balls. Rounding is always outward.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from .errors import DomainError


def _floor_div(a, b):
    return a // b


def _ceil_div(a, b):
    return -((-a) // b)


class BallReal:
    __slots__ = ("mid", "rad", "digits")

    def __init__(self, mid, rad, digits):
        if rad < 0:
            raise ValueError("radius must be non-negative")
        self.mid = int(mid)
        self.rad = int(rad)
        self.digits = int(digits)

    # -- construction ------------------------------------------------------

    @classmethod
    def exact(cls, value, digits):
        """Smallest grid ball containing the rational ``value``."""
        q = Fraction(value)
        return cls.from_interval(q, q, digits)

    @classmethod
    def from_interval(cls, lo, hi, digits):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        scale = 10**digits
        lo_s = _floor_div(lo.numerator * scale, lo.denominator)
        hi_s = _ceil_div(hi.numerator * scale, hi.denominator)
        mid = (lo_s + hi_s) // 2
        return cls(mid, max(hi_s - mid, mid - lo_s), digits)

    def _coerce(self, other):
        if isinstance(other, BallReal):
            return other
        if isinstance(other, (int, Fraction)):
            return BallReal.exact(other, self.digits)
        return NotImplemented

    def with_digits(self, digits):
        """Re-grid to a coarser or finer precision (never narrower than before)."""
        if digits == self.digits:
            return self
        return BallReal.from_interval(self.lower, self.upper, digits)

    # -- bounds and predicates ---------------------------------------------

    @property
    def lower(self):
        return Fraction(self.mid - self.rad, 10**self.digits)

    @property
    def upper(self):
        return Fraction(self.mid + self.rad, 10**self.digits)

    @property
    def midpoint(self):
        return Fraction(self.mid, 10**self.digits)

    @property
    def radius(self):
        return Fraction(self.rad, 10**self.digits)

    def contains(self, x):
        if isinstance(x, BallReal):
            return self.lower <= x.lower and x.upper <= self.upper
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def overlaps(self, other):
        return self.lower <= other.upper and other.lower <= self.upper

    def excludes_zero(self):
        return abs(self.mid) > self.rad

    def is_positive(self):
        return self.mid - self.rad > 0

    def is_negative(self):
        return self.mid + self.rad < 0

    def sign(self):
        """+1 or -1 if certified, 0 if the ball straddles zero."""
        return 1 if self.is_positive() else -1 if self.is_negative() else 0

    def __float__(self):
        return self.mid / 10**self.digits

    def __repr__(self):
        return f"BallReal({self.mid_str(20)} +/- {self.rad_str()})"

    # -- arithmetic --------------------------------------------------------

    def _align(self, other):
        d = min(self.digits, other.digits)
        return self.with_digits(d), other.with_digits(d)

    def __neg__(self):
        return BallReal(-self.mid, self.rad, self.digits)

    def __abs__(self):
        if self.mid - self.rad >= 0:
            return self
        if self.mid + self.rad <= 0:
            return -self
        hi = max(abs(self.mid - self.rad), abs(self.mid + self.rad))
        return BallReal.from_interval(0, Fraction(hi, 10**self.digits), self.digits)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        return BallReal(a.mid + b.mid, a.rad + b.rad, a.digits)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        ends = [x * y for x in (a.lower, a.upper) for y in (b.lower, b.upper)]
        return BallReal.from_interval(min(ends), max(ends), a.digits)

    __rmul__ = __mul__

    def _scale(self, c):
        # exact rational multiplier: mid*c rounded, radius scaled, one ulp slack
        num = self.mid * c.numerator
        mid, rem = divmod(num, c.denominator)
        if 2 * rem >= c.denominator:
            mid += 1
        rad = _ceil_div(self.rad * abs(c.numerator), c.denominator) + (1 if rem else 0)
        return BallReal(mid, rad, self.digits)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.excludes_zero():
            raise DomainError("division by a ball that contains zero")
        a, b = self._align(other)
        ends = [x / y for x in (a.lower, a.upper) for y in (b.lower, b.upper)]
        return BallReal.from_interval(min(ends), max(ends), a.digits)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only non-negative integer powers are supported")
        lo, hi = self.lower, self.upper
        if n % 2 == 0 and lo < 0 < hi:
            cands = [Fraction(0), lo**n, hi**n]
        else:
            cands = [lo**n, hi**n]
        return BallReal.from_interval(min(cands), max(cands), self.digits)

    def log(self):
        if not self.is_positive():
            raise DomainError("log of a ball that is not strictly positive")
        work = self.digits + 10
        lo, _ = log_enclosure(self.lower, work)
        _, hi = log_enclosure(self.upper, work)
        return BallReal.from_interval(lo, hi, self.digits)

    def root(self, n):
        """Real n-th root of a non-negative ball."""
        if not isinstance(n, int) or n < 1:
            raise DomainError("root order must be a positive integer")
        if self.mid - self.rad < 0:
            raise DomainError("root of a ball with negative part")
        d = self.digits
        lo, hi = self.lower, self.upper
        big = 10 ** (d * n)
        lo_i = int(gmpy2.iroot(gmpy2.mpz(_floor_div(lo.numerator * big, lo.denominator)), n)[0])
        hi_arg = _ceil_div(hi.numerator * big, hi.denominator)
        hi_i, exact = gmpy2.iroot(gmpy2.mpz(hi_arg), n)
        hi_i = int(hi_i) + (0 if exact else 1)
        return BallReal.from_interval(Fraction(lo_i, 10**d), Fraction(hi_i, 10**d), d)

    def sqrt(self):
        return self.root(2)

    # -- serialization -----------------------------------------------------

    def mid_str(self, digits=None):
        """Midpoint as a decimal string, optionally truncated to ``digits`` places."""
        d = self.digits
        sign = "-" if self.mid < 0 else ""
        m = abs(self.mid)
        ip, fp = divmod(m, 10**d)
        frac = str(fp).rjust(d, "0") if d else ""
        if digits is not None:
            frac = frac[:digits]
        return f"{sign}{ip}.{frac}" if frac else f"{sign}{ip}"

    def rad_str(self):
        if self.rad == 0:
            return "0"
        return f"{self.rad}e-{self.digits}"

    def to_dict(self):
        return {"midpoint": self.mid_str(), "radius": self.rad_str()}


# ---------------------------------------------------------------------------
# logarithm enclosures


def _atanh_enclosure(t, work):
    """(lo, hi) Fractions bracketing atanh(t) for rational 0 <= t <= 1/3."""
    t = Fraction(t)
    if t == 0:
        return Fraction(0), Fraction(0)
    scale = 10**work
    a, b = t.numerator, t.denominator
    t_lo = a * scale // b
    t_hi = _ceil_div(a * scale, b)
    t2_lo = a * a * scale // (b * b)
    t2_hi = _ceil_div(a * a * scale, b * b)
    p_lo, p_hi = t_lo, t_hi
    s_lo = s_hi = 0
    k = 0
    while True:
        s_lo += p_lo // (2 * k + 1)
        s_hi += _ceil_div(p_hi, 2 * k + 1)
        k += 1
        p_lo = p_lo * t2_lo // scale
        p_hi = _ceil_div(p_hi * t2_hi, scale)
        if p_hi <= 1:
            break
    # remaining tail <= t^(2k+1) / ((2k+1)(1 - t^2)) <= p_hi * 9/8 ulp
    s_hi += _ceil_div(p_hi * 9, 8)
    return Fraction(s_lo, scale), Fraction(s_hi, scale)


def log_enclosure(x, work):
    """(lo, hi) Fractions bracketing log(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError("log of non-positive number")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    z = x / Fraction(2) ** k
    while z >= 2:
        z /= 2
        k += 1
    while z < 1:
        z *= 2
        k -= 1
    lz_lo, lz_hi = _atanh_enclosure((z - 1) / (z + 1), work)
    l2_lo, l2_hi = _atanh_enclosure(Fraction(1, 3), work)
    if k >= 0:
        lo = 2 * lz_lo + 2 * k * l2_lo
        hi = 2 * lz_hi + 2 * k * l2_hi
    else:
        lo = 2 * lz_lo + 2 * k * l2_hi
        hi = 2 * lz_hi + 2 * k * l2_lo
    return lo, hi


def log_ball(x, digits):
    """Ball around log(x) for a positive rational or ball ``x``."""
    if isinstance(x, BallReal):
        return x.log()
    lo, hi = log_enclosure(x, digits + 10)
    return BallReal.from_interval(lo, hi, digits)


def digits_for(x):
    """Decimal digits in the integer part of |x| (0 for |x| < 1)."""
    x = abs(Fraction(x))
    if x < 1:
        return 0
    n = x.numerator // x.denominator
    return len(str(n))


def log10_floor(x):
    """Rough floor(log10 |x|) for a non-zero rational, good to +/-1."""
    x = abs(Fraction(x))
    return math.floor(
        (x.numerator.bit_length() - x.denominator.bit_length()) * math.log10(2)
    )
