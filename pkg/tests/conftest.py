"""Shared fixtures: small reference diagrams and the bundled link table."""

from __future__ import annotations

import pytest

from linkwidth import build_diagram, dt_to_gauss, parse_dt, parse_gauss
from linkwidth.cli import bundled_sample_path, parse_table

TREFOIL = "O1,U2,O3,U1,O2,U3"
FIGURE_EIGHT_DT = "4 6 8 2"
HOPF = "O1,U2;U1,O2"
TORUS2_4 = "O1,U2,O3,U4;U1,O2,U3,O4"
KINK = "O1+,U1+"
SPLIT_TREFOIL_CIRCLE = "O1,U2,O3,U1,O2,U3;"

# frozen small random codes (seeded draw, kept literal so failures replay)
RANDOM_SMALL = (
    "U1,U2,O3,U3,U4,O4,O1,O2,O5;U5",
    "O1,U2,U1,O2,U3,O3",
    "O1,O2,U2,O3,U3;U1",
    "U1,O2,U3,O1,U4,U5,O4,U6,O5,O7,U7,O3,U2,O6",
    "U1,O2,U2,U3,O1,O3",
)


@pytest.fixture
def trefoil():
    return build_diagram(parse_gauss(TREFOIL))


@pytest.fixture
def figure_eight():
    return build_diagram(dt_to_gauss(parse_dt(FIGURE_EIGHT_DT)))


@pytest.fixture
def hopf():
    return build_diagram(parse_gauss(HOPF))


@pytest.fixture
def torus2_4():
    return build_diagram(parse_gauss(TORUS2_4))


@pytest.fixture
def kink():
    return build_diagram(parse_gauss(KINK))


@pytest.fixture
def circle():
    return build_diagram(parse_gauss(""))


@pytest.fixture
def split_trefoil_circle():
    return build_diagram(parse_gauss(SPLIT_TREFOIL_CIRCLE))


@pytest.fixture(scope="session")
def bundled_entries():
    path = bundled_sample_path()
    return parse_table(path.read_text(), source=str(path))


# One line per acceptance criterion, printed after the run so the verdicts
# survive pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bundled_by_name(bundled_entries):
    return {e.name: e for e in bundled_entries}
