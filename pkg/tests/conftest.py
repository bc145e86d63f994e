import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

from cupcap.errors import ValidationError
from cupcap.geometry import Point, validate

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


def _general_position(raw):
    try:
        return validate([Point(x, y) for x, y in raw])
    except ValidationError:
        assume(False)


def point_sets(min_size=3, max_size=12, bound=60):
    """Hypothesis strategy for small integer point sets in general position."""
    coords = st.tuples(st.integers(-bound, bound), st.integers(-bound, bound))
    raw = st.lists(coords, min_size=min_size, max_size=max_size, unique_by=lambda p: p[0])
    return raw.map(_general_position)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in sorted(verdicts):
            terminalreporter.write_line(line)
