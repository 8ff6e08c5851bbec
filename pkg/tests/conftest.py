import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from oflp.core import Profile

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

DENOM = 10**4


@st.composite
def profiles(draw, min_n=1, max_n=10, denominator=DENOM):
    """Profiles on the 1/denominator lattice, with frequent repeats to form groups."""
    n = draw(st.integers(min_n, max_n))
    pool = draw(st.lists(st.integers(0, denominator), min_size=1, max_size=n))
    idx = draw(st.lists(st.integers(0, len(pool) - 1), min_size=n, max_size=n))
    return Profile(Fraction(pool[i], denominator) for i in idx)


def lattice_points(denominator=DENOM):
    return st.integers(0, denominator).map(lambda k: Fraction(k, denominator))


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def fig1():
    return Profile(["0.1"] * 2 + ["0.8"] * 5)


# -- one summary line per acceptance criterion --------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _CRITERIA_MARKS.get(report.nodeid)
    if marker is not None:
        number, title = marker
        _CRITERIA[number] = (title, report.outcome, getattr(report, "criterion_detail", ""))


_CRITERIA_MARKS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA_MARKS[item.nodeid] = mark.args


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    detail = getattr(item, "criterion_detail", None)
    if detail:
        report.criterion_detail = detail


@pytest.fixture
def detail(request):
    """Record a one-line measurement shown next to the criterion's verdict."""

    def note(text):
        request.node.criterion_detail = text

    return note


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcome, extra = _CRITERIA[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:2d} {verdict}: {title}"
        if extra:
            line += f" [{extra}]"
        terminalreporter.write_line(line)
