import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from convnormal.errors import NotFullDimensional
from convnormal.geometry import hull

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def data_dir() -> Path:
    return DATA


def rationals(lo=-3, hi=3, max_den=3):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    ).filter(lambda x: lo <= x <= hi)


@st.composite
def polytopes(draw, dim=2, lattice=False, min_pts=None, max_pts=7, span=3):
    """Random full-dimensional polytopes given as hulls of small point clouds."""
    coord = st.integers(-span, span) if lattice else rationals(-span, span)
    min_pts = min_pts or dim + 1
    pts = draw(st.lists(st.tuples(*[coord] * dim), min_size=min_pts, max_size=max_pts, unique=True))
    try:
        return hull(pts)
    except NotFullDimensional:
        from hypothesis import assume

        assume(False)


# ---------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion

_ACCEPTANCE: dict[int, tuple[str, float, str]] = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None or call.when != "call":
        return
    n = mark.args[0]
    outcome = "PASS" if call.excinfo is None else "FAIL"
    title = (item.function.__doc__ or item.name).strip().splitlines()[0]
    _ACCEPTANCE[n] = (outcome, call.duration, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        outcome, dur, title = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {outcome}  ({dur:7.2f} s)  {title}")
