import functools

import pytest

from tatebetti import ring_from_relations

RINGS = {
    "x2": (["x"], ["x^2"]),
    "x3": (["x"], ["x^3"]),
    "x4": (["x"], ["x^4"]),
    "x5": (["x"], ["x^5"]),
    "x2y2": (["x", "y"], ["x^2", "y^2"]),
    "m2": (["x", "y"], ["x^2", "x*y", "y^2"]),
}
GORENSTEIN = ["x2", "x3", "x5", "x2y2"]
HYPERSURFACES = ["x2", "x3", "x4", "x5"]


@functools.lru_cache(maxsize=None)
def ring(name: str, p: int = 101):
    variables, relations = RINGS[name]
    return ring_from_relations(variables, relations, p=p)


@pytest.fixture
def get_ring():
    return ring


# criterion number -> (verdict, detail); filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {detail}")
