"""Command-line front end.

Exit status: 0 every strict check passed, 1 a mathematical check failed,
2 bad configuration or input, 3 not enough working precision.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import asymptotics as asy
from . import contfrac as cf
from . import convergence as conv
from .errors import (
    DegenerateCFError,
    DomainError,
    InconsistentBoundaryError,
    InsufficientPrecisionError,
    InvariantViolation,
    NonInvertibleStepError,
    PairFormatError,
    SearchSpaceTooLarge,
    TableSizeError,
    UnsupportedPairError,
)
from .integrality import verify_integrality
from .polypair import check_cond3, is_nontrivial, resolve_pair, search_pairs, verify_conditions
from .reports import SuiteReport, fmt_q, parse_q, to_csv, to_json
from .table import SERIES, UNIT, build

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_PRECISION = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def _positive(name, lo):
    def conv_(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"{name} must be >= {lo}")
        return v

    return conv_


def _rational(text):
    try:
        return parse_q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pair", default="zeta3", help="preset name or file:PATH")
    common.add_argument("--size", type=_positive("size", 1), default=None, help="table size N")
    common.add_argument("--digits", type=_positive("digits", 10), default=None)
    common.add_argument("--depth", type=_positive("depth", 1), default=None)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--mode", choices=("full", "streaming"), default="full")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-stable output")

    parser = argparse.ArgumentParser(prog="apery2d", description="Two-dimensional Apery tables and checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check-pair", parents=[common], help="conditions on a polynomial pair")
    b = sub.add_parser("build", parents=[common], help="build the p and q tables")
    b.add_argument("--boundary", choices=("unit", "series", "both"), default="both")
    sub.add_parser("verify", parents=[common], help="recurrences, integrality, cross-differences, enclosure")
    sub.add_parser("certify", parents=[common], help="irrationality certificate for zeta(3)")
    sub.add_parser("asymptotics", parents=[common], help="transfer matrices and growth rates")
    c = sub.add_parser("cfrac", parents=[common], help="continued fraction convergents and tails")
    c.add_argument("--x", type=_rational, default=Fraction(1))
    c.add_argument("--bridge", action="store_true", help="trace the bridge residual over depth")
    c.add_argument("--i", type=_positive("i", 0), default=3)
    s = sub.add_parser("search", parents=[common], help="bounded-height search for pairs")
    s.add_argument("--degree", type=_positive("degree", 1), default=3)
    s.add_argument("--height", type=_positive("height", 1), default=2)
    s.add_argument("--cap", type=_positive("cap", 1), default=None)
    return parser


def _config(args):
    cfg = {
        "command": args.command,
        "pair": args.pair,
        "size": args.size,
        "digits": args.digits,
        "depth": args.depth,
        "format": args.format,
        "mode": args.mode,
    }
    for extra in ("x", "bridge", "i", "degree", "height", "cap", "boundary"):
        if hasattr(args, extra):
            v = getattr(args, extra)
            cfg[extra] = fmt_q(v) if isinstance(v, Fraction) else v
    if not args.no_timestamp:
        cfg["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return cfg


def _pair(args):
    try:
        return resolve_pair(args.pair)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None


def _zeta3_only(pair, what):
    if pair.name != "zeta3":
        raise UnsupportedPairError(f"{what} is only defined for the zeta3 pair, not {pair.name}")


# -- commands --------------------------------------------------------------
# Each fills ``rep`` and returns (header, rows) for CSV output, or None.


def cmd_check_pair(args, rep):
    pair = _pair(args)
    c = verify_conditions(pair)
    rep.add("cond1", c.cond1)
    rep.add("cond2", c.cond2)
    rep.add("cond3", "pass" if c.cond3 else "flag", value=c.cond3)
    rep.add("cond4", "info", cond4=c.cond4.to_dict())
    rep.add("swap_symmetry", "info", **c.symmetric)
    rep.add("pair", "info", f=str(pair.f), g=str(pair.g), degree=pair.degree)
    rows = [[s["name"], s["status"]] for s in rep.suite]
    return ["check", "status"], rows


def _tables(args, pair, size):
    return build(pair, SERIES, size, size, args.mode), build(pair, UNIT, size, size, args.mode)


def cmd_build(args, rep):
    pair = _pair(args)
    N = args.size or 10
    specs = {"unit": [UNIT], "series": [SERIES], "both": [SERIES, UNIT]}[args.boundary]
    tables = {s.name: build(pair, s, N, N, args.mode) for s in specs}
    for name, t in tables.items():
        rep.add(f"build[{name}]", True, rows=N + 1, cols=N + 1, mode=t.mode, diagonal_last=fmt_q(t.diagonal[-1]))
    names = list(tables)
    if args.mode == "full":
        header = ["i", "j"] + names
        rows = [[i, j] + [tables[n][i, j] for n in names] for i in range(N + 1) for j in range(N + 1)]
    else:
        header = ["n"] + names
        rows = [[n] + [tables[k].diagonal[n] for k in names] for n in range(N + 1)]
    return header, rows


def cmd_verify(args, rep):
    pair = _pair(args)
    N = args.size or 30
    try:
        p, q = _tables(args, pair, N)
    except InconsistentBoundaryError as exc:
        rep.add("build", False, i=exc.i, j=exc.j, error=str(exc))
        return None
    rep.add("build+row/column recurrences", True, size=N, mode=args.mode)
    if args.mode == "streaming":
        rep.add("grid checks", "skipped", reason="streaming mode keeps only the diagonal")
        return None
    if check_cond3(pair):
        ir = verify_integrality(q, p, N, "strict")
        rep.add("integrality[strict]", ir.passed, checked=ir.checked, first_failure=ir.first_failure)
    else:
        ir = verify_integrality(q, p, N, "empirical")
        anti = ir.ledger["p"]["antidiagonals"]
        worst = max((a["d_s_exponent"] for a in anti if a["d_s_exponent"] is not None), default=None)
        unbounded = [a["s"] for a in anti if a["d_s_exponent"] is None]
        q_integral = all(d == 1 for row in ir.ledger["q"]["denominators"] for d in row)
        rep.add("integrality[empirical]", "info", q_integral=q_integral, p_max_d_s_exponent=worst,
                p_antidiagonals_beyond_bound=unbounded)
    bad = conv.delta_identity_defects(p, q, N - 1)
    rep.add("cross-difference identities", not bad, first_failure=bad[0] if bad else None)
    if pair.name == "zeta3":
        bad = conv.closed_form_defects(p, q, N)
        rep.add("cross-differences = j^-3, i^-3", not bad, first_failure=bad[0] if bad else None)
        bad = conv.telescoping_defects(p, q, N)
        rep.add("ratio telescoping", not bad, first_failure=bad[0] if bad else None)
        if N >= 2:
            digits = args.digits or 40
            enc = conv.zeta3_enclosure(q, p, N)
            ref = conv.zeta3_reference(digits)
            rep.add("enclosure overlaps zeta(3)", enc.overlaps(ref), width=f"{float(enc.width):.3e}",
                    lo=enc.to_ball(digits).mid_str(), reference=ref.mid_str())
    return None


def cmd_certify(args, rep):
    _zeta3_only(_pair(args), "certify")
    N = args.size or 50
    cert = asy.irrationality_certificate(N, args.digits)
    last = cert.rows[-1]
    rep.add("integers a_n, b_n", True, n_range=[1, N])
    rep.add("nonzero |a_n - b_n zeta(3)|", cert.nonzero)
    if N >= cert.decreasing_from:
        rep.add("tends to zero at n = N", cert.tends_to_zero, final_midpoint=last.eps.mid_str(20),
                final_radius=last.eps.rad_str())
        rep.add("strictly decreasing from n = 5", "pass" if cert.decreasing else "info",
                increases_at=cert.increases)
    rep.add("log rate vs 3 + log(17 - 12 sqrt 2)", "info", final_log_scaled=last.log_rate.mid_str(12),
            limit=cert.limit.mid_str(12), deviation=f"{cert.final_deviation:.6f}")
    rep.add("certificate", "info", certificate=cert.to_dict())
    return ["n", "a_n", "b_n", "midpoint", "radius", "log_scaled"], [
        [r.n, r.a, r.b, r.eps.mid_str(), r.eps.rad_str(), r.log_rate.mid_str(12)] for r in cert.rows
    ]


def cmd_asymptotics(args, rep):
    pair = _pair(args)
    _zeta3_only(pair, "asymptotics")
    N = args.size or 50
    bad = [n for n in range(1, max(N, 200) + 1) if asy.transfer_matrix(n).det() != Fraction(n**3, (n + 1) ** 3)]
    rep.add("det A_n = n^3/(n+1)^3", not bad, n_max=max(N, 200), first_failure=bad[0] if bad else None)
    p, q = asy.zeta3_tables(N + 1, mode="full" if N <= 150 else "streaming")
    if p.rows is not None:
        n_bad = asy.transfer_defect(p, q, N)
        rep.add("table transfer = closed form", n_bad is None, first_failure=n_bad)
    for name, t in (("q", q), ("p", p)):
        r = asy.apery_diagonal_check(t, N + 1)
        rep.add(f"diagonal recurrence [{name}]", r["passed"], first_failure=r["first_failure"])
    eig = asy.limit_eigen()
    rep.add("limit eigenpairs exact", True, eigenpairs=[[repr(lam), [repr(c) for c in vec]] for lam, vec in eig])
    digits = args.digits or 40
    forms = conv.diagonal_epsilons(q, p, N, start=1)
    er = asy.empirical_rate(forms, float(asy.LAMBDA_MINUS), start=1, digits=digits)
    qr = asy.empirical_rate(q.diagonal[1 : N + 1], float(asy.LAMBDA_PLUS), start=1, digits=digits)
    rep.add("rate |eps[n][n]|", "info", **er.to_dict())
    rep.add("rate q[n][n]", "info", **qr.to_dict())
    dist = max(abs(float(a - b)) for a, b in zip(asy.transfer_matrix(N).entries, asy.LIMIT_A.entries))
    rep.add("|A_N - A| entrywise", "info", value=f"{dist:.6e}")
    header, rows = conv.epsilon_csv_rows(forms)
    return header, rows


def cmd_cfrac(args, rep):
    depth = args.depth or 60
    digits = args.digits or 40
    if args.bridge:
        step = max(1, depth // 8)
        depths = list(range(step, depth + 1, step))
        if depths[-1] != depth:
            depths.append(depth)
        trace = cf.bridge_trace(args.i, depths, digits)
        rep.add("bridge residual decreasing", cf.is_decreasing(trace), i=args.i,
                residuals={t.depth: t.residual.mid_str(30) for t in trace})
        w = cf.omega_tail(args.i, depth, digits)
        rep.add("omega tail", "info", **w.to_dict())
        return ["depth", "value", "residual_midpoint", "residual_radius"], [
            [t.depth, t.value, t.residual.mid_str(30), t.residual.rad_str()] for t in trace
        ]
    x = args.x
    chk = cf.convergent_residual(x, depth, digits)
    rep.add("convergent vs zeta(3, x+1)", "info", **chk.to_dict())
    rep.add("P(j,i) = f(i+1,j) - g(i+1,j+1)", cf.P_identity_holds())
    I = args.size or 20
    p, q = cf.zeta3_tables_small(I, min(depth, 50))
    fc = cf.first_column_forms(p, q, I)
    rep.add("first-column forms", fc["ok"], checked=fc["checked"], first_failure=fc["first_failure"])
    J = min(depth, 50)
    for i in range(min(I, 5) + 1):
        for name, t in (("p", p), ("q", q)):
            r = cf.scaled_row_recurrence_check(t, i, J)
            rep.add(f"scaled row recurrence [{name}, i={i}]", r["ok"], first_failure=r["first_failure"])
    for i in range(min(I, 5) + 1):
        j = cf.table_convergent_defect(p, q, i, min(J, 20))
        rep.add(f"convergents = scaled table entries [i={i}]", j is None, first_failure=j)
    return cf.cf_trace_rows(x, depth, digits)


def cmd_search(args, rep):
    cap = args.cap
    kwargs = {"cap": cap} if cap else {}
    found = search_pairs(args.degree, args.height, **kwargs)
    nontrivial = [pp for pp in found if is_nontrivial(pp)]
    rep.add("search", "info", degree=args.degree, height=args.height, found=len(found),
            nontrivial=len(nontrivial))
    rows = []
    for pp in found:
        rep.add(pp.name, "info", f=str(pp.f), g=str(pp.g), nontrivial=is_nontrivial(pp))
        rows.append([pp.name, str(pp.f), str(pp.g), is_nontrivial(pp)])
    return ["name", "f", "g", "nontrivial"], rows


COMMANDS = {
    "check-pair": cmd_check_pair,
    "build": cmd_build,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "asymptotics": cmd_asymptotics,
    "cfrac": cmd_cfrac,
    "search": cmd_search,
}


def _emit(args, rep, table):
    if args.format == "json":
        text = to_json(rep.to_dict())
    elif args.format == "text":
        text = rep.to_text()
    else:
        header, rows = table if table else (["name", "status"], [[s["name"], s["status"]] for s in rep.suite])
        text = to_csv(header, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    rep = SuiteReport(_config(args))
    try:
        table = COMMANDS[args.command](args, rep)
    except InsufficientPrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (PairFormatError, DomainError, UnsupportedPairError, SearchSpaceTooLarge, TableSizeError,
            ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantViolation, InconsistentBoundaryError, NonInvertibleStepError, DegenerateCFError) as exc:
        rep.add("error", False, error=str(exc))
        _emit(args, rep, None)
        return EXIT_FAIL
    _emit(args, rep, table)
    return EXIT_FAIL if rep.failures else EXIT_OK


def main():
    sys.exit(run())
