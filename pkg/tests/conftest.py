import time
from fractions import Fraction

import pytest

from triplewell import BoxProblem, build_triple_well, scan_levels
from triplewell.reference import row_for

# criterion number -> (passed, detail), filled by test_acceptance.py
CRITERIA = {}


class RowSolver:
    """Solves published rows once per session and remembers the wall time."""

    def __init__(self):
        self._cache = {}

    def __call__(self, omega):
        if omega not in self._cache:
            row = row_for(omega)
            start = time.perf_counter()
            problem = BoxProblem.for_digits(
                build_triple_well(omega), Fraction(row.half_width), row.terms, row.decimals
            )
            levels = scan_levels(problem, 3)
            self._cache[omega] = (problem, levels, time.perf_counter() - start)
        return self._cache[omega]


@pytest.fixture(scope="session")
def solve_row():
    return RowSolver()


@pytest.fixture(scope="session")
def row20(solve_row):
    return solve_row(20)


@pytest.fixture(scope="session")
def small_problem():
    """Cheap converged problem: omega 5, L 2, 200 terms, 10 places."""
    return BoxProblem.for_digits(build_triple_well(5), 2, 200, 10)


@pytest.fixture(scope="session")
def small_levels(small_problem):
    return scan_levels(small_problem, 3)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        passed, detail = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
