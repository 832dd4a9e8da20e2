import numpy as np
import pytest

from structcodesign import bundled_instance_path, load_instance
from structcodesign.model import SparsityPattern

# (criterion id, description, passed, detail) rows filled by test_acceptance.py
ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def ex1():
    return load_instance(bundled_instance_path("example1"))


@pytest.fixture(scope="session")
def ex2():
    return load_instance(bundled_instance_path("example2"))


def random_pattern(rng, rows, cols, density):
    return SparsityPattern.from_dense(rng.random((rows, cols)) < density) if rows and cols else SparsityPattern.zeros(rows, cols)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, desc, passed, detail in sorted(ACCEPTANCE_RESULTS):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] AC{cid} {desc}: {detail}")
