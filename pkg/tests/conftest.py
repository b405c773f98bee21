import math
import os

import numpy as np
import pytest
from hypothesis import settings

from indefembed import build_complex, complete_complex, metric_from_lengths

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

SQRT51 = math.sqrt(51.0)


@pytest.fixture
def triangle():
    return build_complex([[0, 1, 2]])


@pytest.fixture
def hollow_triangle():
    return build_complex([[0, 1], [0, 2], [1, 2]])


@pytest.fixture
def k5():
    return complete_complex(5)


def figure_one():
    """Star of v with every edge value from the figure; vertex 0 is v."""
    c = build_complex(
        [[0, 1, 3], [1, 2, 3], [2, 3, 4], [0, 5, 6], [3, 5], [4, 5], [5, 7], [4, 7]],
        vertex_labels=list("vABCDEFG"),
    )
    g = {
        (0, 1): 2, (0, 6): 3, (5, 6): -3, (0, 5): math.sqrt(2), (0, 3): 1,
        (1, 2): -9, (1, 3): -1, (2, 3): 0, (2, 4): -4, (3, 5): 11, (3, 4): -1,
        (4, 5): 7, (5, 7): -1, (4, 7): 100,
    }
    return c, metric_from_lengths(c, g), g


@pytest.fixture
def figure1():
    return figure_one()


def long_edge_coords():
    return np.array([[0.0, 0.0], [50.0, 7 * SQRT51], [-50.0, 7 * SQRT51]])


# one summary line per acceptance criterion
_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    status = "PASS" if call.excinfo is None else "FAIL"
    _criteria[number] = (status, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, detail = _criteria[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title} | {detail}")
