import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def analyzed():
    """Memoized ``(ring, lattice, classification)`` by spec text."""
    from idealspaces.ideals import analyze_ring
    from idealspaces.rings import build_ring

    cache = {}

    def get(text):
        if text not in cache:
            ring = build_ring(text)
            lat, cls = analyze_ring(ring)
            cache[text] = (ring, lat, cls)
        return cache[text]

    return get


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
