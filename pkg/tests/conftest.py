import time

import pytest

from apery2d.asymptotics import zeta3_tables
from apery2d.polypair import PRESETS
from apery2d.table import SERIES, UNIT, build

# criterion number -> list of (check name, passed, detail)
ACCEPTANCE = {}


def record(criterion, name, ok, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((name, bool(ok), detail))
    line = f"criterion {criterion} [{name}]: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[c]
        ok = all(passed for _, passed, _ in checks)
        failed = [n for n, passed, _ in checks if not passed]
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {c}: {'PASS' if ok else 'FAIL'}{tail}")
        for name, passed, detail in checks:
            tr.write_line(f"    {'ok  ' if passed else 'FAIL'} {name} {detail}".rstrip())


@pytest.fixture(scope="session")
def zeta3_full():
    """Full 100 x 100 (p, q) tables with the build time in seconds."""
    z = PRESETS["zeta3"]
    t0 = time.perf_counter()
    p = build(z, SERIES, 100, 100)
    q = build(z, UNIT, 100, 100)
    return p, q, time.perf_counter() - t0


@pytest.fixture(scope="session")
def zeta3_diag():
    """Streaming (p, q) through row 101, superdiagonal included."""
    return zeta3_tables(101)

