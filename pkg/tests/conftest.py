import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA = {
    1: "ring ranks of the universal fibers",
    2: "discriminant identities",
    3: "epsilon probes (first-order vanishing, quartic slope 16)",
    4: "Phi^2 = +-chi-bar(0) on sampled points",
    5: "closed-form Betti tables equal Koszul homology",
    6: "Euler characteristic consistency",
    7: "factorization compatibility",
    8: "cohomology specialization",
    9: "multiplicity-freeness and parity disjointness",
    10: "boundary cases r = n and r = 0",
}

_OUTCOMES: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _OUTCOMES.setdefault(marker.args[0], []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, title in CRITERIA.items():
        got = _OUTCOMES.get(k)
        if not got:
            status = "NOT RUN"
        elif all(o == "passed" for o in got):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"[{status:>7}] criterion {k:>2}: {title} ({len(got or [])} test(s))")
