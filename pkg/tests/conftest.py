import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def lattice_points(n, lo=-3, hi=3, min_size=1, max_size=7):
    pt = st.tuples(*[st.integers(lo, hi)] * n)
    return st.lists(pt, min_size=min_size, max_size=max_size)


@st.composite
def polytopes(draw, n=None, full_dim=False, max_size=7):
    from latval import Polytope
    n = draw(st.sampled_from([2, 3])) if n is None else n
    pts = draw(lattice_points(n, min_size=n + 1 if full_dim else 1, max_size=max_size))
    P = Polytope(pts)
    if full_dim:
        from hypothesis import assume
        assume(P.dim == n)
    return P


@st.composite
def unimodular(draw, n):
    from latval import random_unimodular
    return random_unimodular(n, steps=draw(st.integers(1, 12)), seed=draw(st.integers(0, 2 ** 32)))


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def seed():
    return 20240611
