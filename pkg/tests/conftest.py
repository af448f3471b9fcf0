import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eqdeg.degrees import DegreeCalculator
from eqdeg.groups import load_group, s4, trivial_group
from eqdeg.o2lattice import ProductLattice

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def load_data(name: str):
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="session")
def s4_calc():
    return DegreeCalculator(s4())


@pytest.fixture(scope="session")
def trivial_lat():
    return ProductLattice(trivial_group())


@pytest.fixture(scope="session")
def d4z2_lat():
    return ProductLattice(load_group("D4xZ2"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
