"""Serialization helpers: exact rationals as "num/den", balls as decimal pairs,
and the JSON/CSV report envelope used by the CLI."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction


def fmt_q(x) -> str:
    """Render an exact rational as a decimal-free "num/den" string."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text) -> Fraction:
    """Inverse of :func:`fmt_q`. Bare integers are accepted, decimals are not."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a 'num/den' string, got {text!r}")
    s = text.strip()
    if any(c in s for c in ".eE"):
        raise ValueError(f"decimal notation is not allowed for exact values: {text!r}")
    if "/" in s:
        num, den = s.split("/", 1)
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default) + "\n"


def _default(obj):
    if isinstance(obj, Fraction):
        return fmt_q(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_q(v) if isinstance(v, Fraction) else v for v in row])
    return buf.getvalue()


class SuiteReport:
    """Collects named checks in insertion order, so output is stable."""

    def __init__(self, config):
        self.config = dict(config)
        self.suite = []

    def add(self, name, ok, **details):
        status = "pass" if ok is True else ("fail" if ok is False else str(ok))
        self.suite.append({"name": name, "status": status, **details})
        return ok

    @property
    def failures(self):
        return [s for s in self.suite if s["status"] == "fail"]

    def to_dict(self):
        counts = {}
        for s in self.suite:
            counts[s["status"]] = counts.get(s["status"], 0) + 1
        return {
            "config": self.config,
            "suite": self.suite,
            "summary": {"checks": len(self.suite), **counts, "ok": not self.failures},
        }

    def to_text(self):
        lines = []
        for s in self.suite:
            extra = {k: v for k, v in s.items() if k not in ("name", "status")}
            tail = ""
            if extra:
                tail = "  " + ", ".join(f"{k}={_short(v)}" for k, v in extra.items())
            lines.append(f"[{s['status'].upper():>4}] {s['name']}{tail}")
        summary = self.to_dict()["summary"]
        lines.append(f"-- {summary['checks']} checks, ok={summary['ok']}")
        return "\n".join(lines) + "\n"


def _short(v, limit=80):
    s = v if isinstance(v, str) else json.dumps(v, default=_default)
    return s if len(s) <= limit else s[: limit - 3] + "..."
