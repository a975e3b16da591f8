import pytest

from fixture_complexes import EX_GROUPS, FIXTURES, example_dmat, fixture_basis
from interaction_tda import interaction_vr_basis


@pytest.fixture(params=sorted(FIXTURES))
def named_fixture(request):
    name = request.param
    return name, fixture_basis(name), FIXTURES[name][1]


@pytest.fixture
def example_basis():
    """Full interaction VR basis of the four-point example, every degree."""
    return interaction_vr_basis(example_dmat(), EX_GROUPS, 6, 10.0)


@pytest.fixture
def data_dir():
    from pathlib import Path

    return Path(__file__).parent / "data"


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
