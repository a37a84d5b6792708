"""lcm(1..n), the modular witness behind the integer-combination property, and
bulk integrality sweeps over (p, q) tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .ball import log_ball
from .errors import InvariantViolation, UnsupportedPairError
from .polypair import check_cond3


def primes_upto(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def lcm_upto(n):
    """d_n = lcm(1, ..., n) as the product of p^floor(log_p n) over primes p <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for p in primes_upto(n):
        pk = p
        while pk * p <= n:
            pk *= p
        out *= pk
    return out


class LcmCache:
    """values[n] = d_n, extended incrementally (d_0 is stored as 1)."""

    def __init__(self):
        self.values = [1, 1]

    def __getitem__(self, n):
        while len(self.values) <= n:
            m = len(self.values)
            self.values.append(self.values[-1] * _prime_power_base(m))
        return self.values[n]


def _prime_power_base(m):
    # p if m = p^k, else 1
    for p in range(2, int(m**0.5) + 1):
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else 1
    return m


LCM = LcmCache()


@dataclass(frozen=True)
class WitnessRecord:
    i: int
    j: int
    d: int
    x: int
    modulus: int  # f(i', 0), may be negative

    def verify(self, pair):
        a, b = self.i // self.d, self.j // self.d
        m = abs(self.modulus)
        ok1 = (pair.f(a, b) - self.x * pair.f(0, b)) % m == 0
        ok2 = (pair.g(0, b) - self.x * pair.g(a, b)) % m == 0
        return ok1 and ok2

    def to_dict(self):
        return {"i": self.i, "j": self.j, "d": self.d, "x": self.x, "modulus": self.modulus}


def _as_int(v, what):
    v = Fraction(v)
    if v.denominator != 1:
        raise UnsupportedPairError(f"{what} = {v} is not an integer")
    return int(v)


def find_witness(pair, i, j):
    """Integer x with f(i',j') = x f(0,j') and g(0,j') = x g(i',j') modulo f(i',0)."""
    if i < 1 or j < 1:
        raise ValueError("witness needs i, j >= 1")
    if not check_cond3(pair):
        raise UnsupportedPairError(f"pair {pair.name} does not satisfy cond3")
    d = gcd(i, j)
    a, b = i // d, j // d
    modulus = _as_int(pair.f(a, 0), f"f({a},0)")
    f_ab = _as_int(pair.f(a, b), f"f({a},{b})")
    f_0b = _as_int(pair.f(0, b), f"f(0,{b})")
    m = abs(modulus)
    if m == 1:
        x = 0
    else:
        try:
            x = f_ab * pow(f_0b, -1, m) % m
        except ValueError as exc:
            raise InvariantViolation(f"f(0,{b}) is not invertible mod {m}") from exc
    rec = WitnessRecord(i, j, d, x, modulus)
    if not rec.verify(pair):
        raise InvariantViolation(f"witness congruences fail at ({i},{j})")
    return rec


def zlinear_decomposition(pair, table, i, j):
    """Integers (c1, c2, c3) with u[i][j] = c1 u[i-1][j] + c2 u[i][j-1] + c3 u[i-1][j-1]."""
    if i < 1 or j < 1:
        raise ValueError("decomposition needs i, j >= 1")
    w = find_witness(pair, i, j)
    a, b = i // w.d, j // w.d
    fa0 = pair.f(a, 0)
    n1 = pair.f(a, b) - w.x * pair.f(0, b)
    n3 = pair.g(0, b) - w.x * pair.g(a, b)
    if n1 % fa0 or n3 % fa0:
        raise InvariantViolation(f"coefficients not divisible by f({a},0) at ({i},{j})")
    c1, c2, c3 = int(n1 / fa0), w.x, int(n3 / fa0)
    u = table
    if c1 * u[i - 1, j] + c2 * u[i, j - 1] + c3 * u[i - 1, j - 1] != u[i, j]:
        raise InvariantViolation(f"reconstruction fails at ({i},{j})")
    return c1, c2, c3


@dataclass
class IntegralityReport:
    mode: str
    N: int
    exponent: int
    passed: bool = True
    checked: int = 0
    first_failure: dict | None = None
    ledger: dict = field(default_factory=dict)

    def to_dict(self):
        d = {
            "mode": self.mode,
            "N": self.N,
            "exponent": self.exponent,
            "passed": self.passed,
            "checked": self.checked,
        }
        if self.first_failure:
            d["first_failure"] = self.first_failure
        if self.ledger:
            d["ledger"] = self.ledger
        return d


def verify_integrality(qtable, ptable, N, mode="strict"):
    """Strict: q[i][j] and d_max(i,j)^deg p[i][j] are integers for i, j <= N.

    Empirical: record every denominator plus, per antidiagonal s = i + j, the
    lcm of denominators and the least e <= 4 deg with that lcm dividing d_s^e
    (None if no such e).
    """
    if qtable.pair != ptable.pair:
        raise ValueError("tables are built over different pairs")
    if min(qtable.I, qtable.J, ptable.I, ptable.J) < N:
        raise ValueError(f"tables must cover indices up to {N}")
    e = qtable.pair.degree
    rep = IntegralityReport(mode, N, e)
    if mode == "strict":
        for i in range(N + 1):
            for j in range(N + 1):
                rep.checked += 1
                q = qtable[i, j]
                if q.denominator != 1:
                    rep.passed = False
                    rep.first_failure = {"table": "q", "i": i, "j": j, "denominator": q.denominator}
                    return rep
                scaled = LCM[max(i, j)] ** e * ptable[i, j]
                if scaled.denominator != 1:
                    rep.passed = False
                    rep.first_failure = {
                        "table": "p", "i": i, "j": j, "denominator": scaled.denominator,
                    }
                    return rep
        return rep
    if mode != "empirical":
        raise ValueError(f"mode must be 'strict' or 'empirical', not {mode!r}")
    for name, t in (("q", qtable), ("p", ptable)):
        dens = [[t[i, j].denominator for j in range(N + 1)] for i in range(N + 1)]
        anti = []
        for s in range(2 * N + 1):
            L = 1
            for i in range(max(0, s - N), min(s, N) + 1):
                L = lcm(L, dens[i][s - i])
            ds = LCM[max(s, 1)]
            exp = next((k for k in range(4 * e + 1) if ds**k % L == 0), None)
            anti.append({"s": s, "lcm": L, "d_s_exponent": exp})
        rep.ledger[name] = {"denominators": dens, "antidiagonals": anti}
        rep.checked += (N + 1) ** 2
    return rep


def lcm_growth(N, digits=30):
    """[(n, ball of log(d_n)/n)] for n = 1..N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    out = []
    for n in range(1, N + 1):
        out.append((n, log_ball(Fraction(LCM[n]), digits) * Fraction(1, n)))
    return out
