import sys
from pathlib import Path

import pytest

from lowcond import kernels, parse_graph, star_graph

sys.path.insert(0, str(Path(__file__).parent))

FIGURE1_TEXT = "vertices: 1 2 3 4 5\n1 2\n2 3\n2 4\n3 4\n3 5\n4 5"


@pytest.fixture
def fig1():
    return parse_graph(FIGURE1_TEXT)


@pytest.fixture
def star():
    return star_graph(3)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
