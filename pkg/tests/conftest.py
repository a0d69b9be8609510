"""Shared fixtures plus the acceptance summary hook.

Tests marked with @pytest.mark.criterion("C07", "steady state") are grouped
by id, and the terminal summary prints one verdict line per criterion id so
a full run ends with a compact scoreboard. Expected failures (strict xfail)
show up as FAIL (expected) with the reason, not as silent passes.
"""

from __future__ import annotations

import math
from collections import defaultdict

import numpy as np
import pytest

import pointfeedback as pf

_criterion_reports: dict = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(ident, title): ties a test to one acceptance criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    # skipif marks skip during setup, so that phase counts as an outcome too
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    ident, title = marker.args
    if hasattr(report, "wasxfail"):
        status = "xfail" if report.skipped else "failed"
        detail = report.wasxfail
    elif report.passed:
        status, detail = "passed", ""
    elif report.skipped:
        status, detail = "skipped", ""
    else:
        detail = report.longreprtext.splitlines()[-1][:160] if report.longrepr else ""
        status = "failed"
    _criterion_reports[ident].append((title, status, detail, item.name))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_reports:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for ident in sorted(_criterion_reports):
        entries = _criterion_reports[ident]
        title = entries[0][0]
        outcomes = {e[1] for e in entries}
        if outcomes == {"passed"}:
            verdict = "PASS"
            note = f"{len(entries)} check(s)"
        elif "failed" in outcomes:
            verdict = "FAIL"
            note = "; ".join(e[2] for e in entries if e[1] == "failed")[:160]
        elif outcomes == {"skipped"}:
            verdict = "SKIPPED"
            note = f"{len(entries)} check(s) not run in this environment"
        else:
            verdict = "FAIL (expected)"
            note = "; ".join(sorted({e[2] for e in entries if e[1] == "xfail"}))[:160]
            n_pass = sum(1 for e in entries if e[1] == "passed")
            if n_pass:
                note += f" [{n_pass} sub-check(s) still pass]"
        tr.write_line(f"[{ident}] {title}: {verdict} ({note})")


# ---------------------------------------------------------------------------
# fixtures shared across files


@pytest.fixture(scope="session")
def heat_profile():
    """Unit-mass even Gaussian whose evolved traces have closed forms."""
    return pf.InitialCondition(
        kind="gaussian_bump",
        center=0.0,
        width=2.0,
        height=1.0 / math.sqrt(4.0 * math.pi),
        claims_even=True,
        claims_monotone_outside=True,
    )


@pytest.fixture(scope="session")
def tent_profile():
    return pf.InitialCondition(
        kind="tent", claims_even=True, claims_monotone_outside=True
    )


@pytest.fixture(scope="session")
def unit_forcing():
    return pf.ForcingSpec(kind="constant", level=1.0)


@pytest.fixture(scope="session")
def zero_forcing():
    return pf.ForcingSpec(kind="constant", level=0.0)


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.Philox(1234))
