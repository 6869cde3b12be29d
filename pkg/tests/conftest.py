from fractions import Fraction

import pytest
from hypothesis import strategies as st

from terrain_unfold.heightfield import Heightfield


@st.composite
def heightfields(draw, max_rows=5, max_cols=5, max_h=5, unit=True):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    grid = draw(st.lists(st.lists(st.integers(1, max_h), min_size=n, max_size=n), min_size=m, max_size=m))
    if unit:
        return Heightfield.from_rows(grid)
    dims = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)
    widths = draw(st.lists(dims, min_size=n, max_size=n))
    depths = draw(st.lists(dims, min_size=m, max_size=m))
    frac_grid = [[Fraction(h, draw(st.integers(1, 3))) for h in row] for row in grid]
    return Heightfield.from_rows(frac_grid, widths, depths)


def hf(*rows, **kw):
    return Heightfield.from_rows(rows, **kw)


@pytest.fixture
def cube():
    return hf([1])


@pytest.fixture
def box2():
    return hf([2])


ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
