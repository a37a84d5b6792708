"""Transfer matrices along the diagonal, the limit matrix and its exact
eigenpairs in Q(sqrt 2), empirical growth rates, the diagonal three-term
recurrence and the irrationality certificate."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ball import BallReal, log_ball
from .convergence import epsilon, required_digits
from .errors import InsufficientPrecisionError, InvariantViolation
from .integrality import LCM
from .polypair import PRESETS
from .table import SERIES, UNIT, build


class QSqrt2:
    """Exact a + b sqrt(2) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _lift(x):
        return x if isinstance(x, QSqrt2) else QSqrt2(x)

    def __add__(self, o):
        o = self._lift(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self):
        return QSqrt2(self.a, -self.b)

    def norm(self):
        return self.a**2 - 2 * self.b**2

    def __truediv__(self, o):
        o = self._lift(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conj()
        return QSqrt2(num.a / n, num.b / n)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QSqrt2(o)
        return isinstance(o, QSqrt2) and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def ball(self, digits):
        return BallReal.exact(self.a, digits) + BallReal.exact(2, digits + 5).sqrt().with_digits(digits) * self.b

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt2)"


@dataclass(frozen=True)
class TransferMatrix:
    entries: tuple  # (a11, a12, a21, a22)
    n: int | None = None  # None marks the limit matrix

    def __matmul__(self, other):
        a, b, c, d = self.entries
        if isinstance(other, TransferMatrix):
            e, f, g, h = other.entries
            return TransferMatrix((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), self.n)
        x, y = other
        return (a * x + b * y, c * x + d * y)

    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self):
        return self.entries[0] + self.entries[3]

    def to_dict(self):
        from .reports import fmt_q

        return {"n": self.n, "entries": [fmt_q(x) for x in self.entries]}


LIMIT_A = TransferMatrix((Fraction(35), Fraction(-6), Fraction(6), Fraction(-1)))


def transfer_matrix(n):
    """A_n = [[(6n^3+9n^2+5n+1)/(n+1)^3, -n^3/(n+1)^3], [1, 0]] @ [[6, -1], [1, 0]]."""
    if n < 1:
        raise ValueError("transfer_matrix needs n >= 1")
    c = Fraction(n + 1) ** 3
    left = TransferMatrix((Fraction(6 * n**3 + 9 * n**2 + 5 * n + 1) / c, Fraction(-(n**3)) / c, Fraction(1), Fraction(0)), n)
    right = TransferMatrix((Fraction(6), Fraction(-1), Fraction(1), Fraction(0)), n)
    return left @ right


def pair_transfer_matrix(pair, n):
    """The same step built from any pair's coefficients.

    Right factor: the matrix recurrence at (n, n), carrying (u[n-1][n], u[n-1][n-1])
    to (u[n][n], u[n][n-1]). Left factor: the row recurrence on row n at j = n,
    carrying that to (u[n][n+1], u[n][n]).
    """
    f, g = pair.f, pair.g
    fn0 = f(n, 0)
    right = TransferMatrix((f(n, n) / fn0, g(0, n) / fn0, f(0, n) / fn0, g(n, n) / fn0), n)
    f0 = f(0, n + 1)
    left = TransferMatrix(((f(n + 1, n) - g(n + 1, n + 1)) / f0, g(0, n) / f0, Fraction(1), Fraction(0)), n)
    return left @ right


def transfer_defect(p, q, N):
    """First n <= N where (u[n][n+1], u[n][n]) != A_n (u[n-1][n], u[n-1][n-1]) on either table."""
    for n in range(1, N + 1):
        A = transfer_matrix(n)
        for t in (q, p):
            if A @ (t[n - 1, n], t[n - 1, n - 1]) != (t[n, n + 1], t[n, n]):
                return n
    return None


def limit_eigen():
    """[(17 + 12 sqrt2, (18 + 12 sqrt2, 6)), (17 - 12 sqrt2, (18 - 12 sqrt2, 6))], verified exactly."""
    out = []
    for s in (1, -1):
        lam = QSqrt2(17, 12 * s)
        vec = (QSqrt2(18, 12 * s), QSqrt2(6))
        a, b, c, d = LIMIT_A.entries
        image = (vec[0] * a + vec[1] * b, vec[0] * c + vec[1] * d)
        if image != (lam * vec[0], lam * vec[1]):
            raise InvariantViolation("limit eigenpair check failed")
        out.append((lam, vec))
    return out


LAMBDA_PLUS = QSqrt2(17, 12)
LAMBDA_MINUS = QSqrt2(17, -12)


@dataclass
class RateReport:
    start: int
    ratios: list  # ball x_n / x_{n-1}, n = start+1 ..
    roots: list  # ball |x_n|^(1/n), n >= max(start, 1)
    target: float
    ratio_deviation: float  # |final ratio / target - 1|
    root_deviation: float | None

    @property
    def end(self):
        return self.start + len(self.ratios)

    def to_dict(self):
        return {
            "n_range": [self.start, self.end],
            "target": f"{self.target:.15g}",
            "final_ratio": self.ratios[-1].to_dict(),
            "final_root": self.roots[-1].to_dict() if self.roots else None,
            "ratio_deviation": f"{self.ratio_deviation:.6f}",
            "root_deviation": None if self.root_deviation is None else f"{self.root_deviation:.6f}",
        }


def _as_ball(x, digits):
    if isinstance(x, BallReal):
        return x
    if hasattr(x, "value"):
        return x.value
    return BallReal.exact(Fraction(x), digits)


def empirical_rate(series, target, start=0, digits=40):
    """Ratios and n-th roots of |x_n| for a series x_start, x_start+1, ...

    No convergence is claimed; the deviation from ``target`` at the last index
    is reported.
    """
    if len(series) < 5:
        raise ValueError("series needs at least 5 terms")
    balls = [_as_ball(x, digits) for x in series]
    for k, b in enumerate(balls):
        if not b.excludes_zero():
            raise InsufficientPrecisionError(f"term {start + k} is not separated from zero", 2 * b.digits)
    ratios = [abs(balls[k] / balls[k - 1]) for k in range(1, len(balls))]
    roots = []
    for k, b in enumerate(balls):
        n = start + k
        if n >= 1:
            mag = abs(b)
            roots.append(mag.root(n))
    tgt = float(target)
    rdev = abs(float(ratios[-1]) / tgt - 1)
    odev = abs(float(roots[-1]) / tgt - 1) if roots else None
    return RateReport(start, ratios, roots, tgt, rdev, odev)


def apery_diagonal_check(table, N):
    """(n+1)^3 u[n+1][n+1] = (34n^3+51n^2+27n+5) u[n][n] - n^3 u[n-1][n-1] for 1 <= n <= N-1."""
    diag = table.diagonal
    if len(diag) < N + 1:
        raise ValueError(f"table must reach ({N},{N})")
    for n in range(1, N):
        lhs = (n + 1) ** 3 * diag[n + 1]
        rhs = (34 * n**3 + 51 * n**2 + 27 * n + 5) * diag[n] - n**3 * diag[n - 1]
        if lhs != rhs:
            return {"passed": False, "first_failure": n, "checked": n - 1}
    return {"passed": True, "first_failure": None, "checked": max(N - 1, 0)}


def final_decay_limit(digits=40):
    """3 + log(17 - 12 sqrt 2), the exponential rate of d_n^3 |eps[n][n]|."""
    lam = LAMBDA_MINUS.ball(digits + 10)
    return (lam.log() + 3).with_digits(digits)


@dataclass
class CertificateRow:
    n: int
    a: int
    b: int
    eps: BallReal  # d_n^3 (q zeta3 - p) = b zeta3 - a
    log_rate: BallReal  # (1/n) log |eps|

    def to_dict(self):
        return {
            "n": self.n,
            "a_n": str(self.a),
            "b_n": str(self.b),
            "midpoint": self.eps.mid_str(),
            "radius": self.eps.rad_str(),
            "log_scaled": self.log_rate.mid_str(12),
        }


@dataclass
class Certificate:
    N: int
    digits: int
    rows: list = field(default_factory=list)
    decreasing_from: int = 5
    decreasing: bool = True
    increases: list = field(default_factory=list)  # n where |eps_n| >= |eps_{n-1}|
    limit: BallReal | None = None
    final_deviation: float | None = None

    @property
    def nonzero(self):
        return all(r.eps.excludes_zero() for r in self.rows)

    @property
    def tends_to_zero(self):
        """Evidence at the last index: |eps_N| < 1 and a negative log rate."""
        if not self.rows:
            return False
        last = self.rows[-1]
        return abs(last.eps).upper < 1 and last.log_rate.is_negative()

    @property
    def ok(self):
        return self.nonzero and (self.N < self.decreasing_from or self.tends_to_zero)

    def to_dict(self):
        return {
            "N": self.N,
            "digits": self.digits,
            "rows": [r.to_dict() for r in self.rows],
            "decreasing_from": self.decreasing_from,
            "decreasing": self.decreasing,
            "increases_at": self.increases,
            "nonzero": self.nonzero,
            "tends_to_zero": self.tends_to_zero,
            "limit": self.limit.mid_str(12) if self.limit else None,
            "final_log_scaled": self.rows[-1].log_rate.mid_str(12) if self.rows else None,
            "final_deviation": None if self.final_deviation is None else f"{self.final_deviation:.6f}",
            "ok": self.ok,
        }


def zeta3_tables(N, mode="streaming"):
    """(p, q) for zeta3 through row N, with the superdiagonal included."""
    z = PRESETS["zeta3"]
    return build(z, SERIES, N, N + 1, mode=mode), build(z, UNIT, N, N + 1, mode=mode)


def irrationality_certificate(N, digits=None, tables=None):
    """Integers a_n = d_n^3 p[n][n], b_n = d_n^3 q[n][n] with |b_n zeta3 - a_n| certified.

    Integrality and nonvanishing are certified for 1 <= n <= N (failures
    raise). Strict decrease on 5 <= n <= N is measured, and every index where
    it fails is recorded in ``increases``. With ``digits=None`` the precision
    policy for N is used with one retry at double precision.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if digits is None:
        d = required_digits(N)
        try:
            return _certificate(N, d, tables)
        except InsufficientPrecisionError:
            return _certificate(N, 2 * d, tables)
    return _certificate(N, digits, tables)


def _certificate(N, digits, tables):
    p, q = tables if tables is not None else zeta3_tables(N)
    cert = Certificate(N, digits)
    for n in range(1, N + 1):
        scale = LCM[n] ** 3
        a, b = scale * p[n, n], scale * q[n, n]
        if a.denominator != 1 or b.denominator != 1:
            raise InvariantViolation(f"d_n^3 p or d_n^3 q is not an integer at n = {n}")
        try:
            lf = epsilon(q, p, n, n, digits)
        except InsufficientPrecisionError as exc:
            raise InsufficientPrecisionError(
                f"cannot certify |a_n - b_n zeta(3)| != 0 at n = {n} with {digits} digits",
                max(exc.needed_digits, required_digits(N)),
            ) from None
        val = lf.value * scale
        log_rate = abs(val).log() * Fraction(1, n)
        cert.rows.append(CertificateRow(n, int(a), int(b), val, log_rate))
    for prev, cur in zip(cert.rows, cert.rows[1:]):
        if cur.n > cert.decreasing_from and not abs(cur.eps).upper < abs(prev.eps).lower:
            cert.increases.append(cur.n)
    cert.decreasing = not cert.increases
    cert.limit = final_decay_limit()
    cert.final_deviation = abs(float(cert.rows[-1].log_rate) - float(cert.limit))
    return cert


def eigen_direction(p, q, n, digits=None):
    """(eps[n][n+1] / eps[n][n]) as a ball, to compare with the eigenvector ratio 3 - 2 sqrt 2."""
    e1 = epsilon(q, p, n, n + 1, digits)
    e0 = epsilon(q, p, n, n, digits)
    return e1.value / e0.value
