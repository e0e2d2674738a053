import numpy as np
import pytest
from hypothesis import strategies as st

from gcpseudo.field import FieldMatrix
from gcpseudo.fixtures import example_h


@pytest.fixture
def H42():
    return example_h()


@st.composite
def field_matrices(draw, q=None, max_rows=3, max_cols=5):
    q = draw(st.sampled_from([2, 3])) if q is None else q
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return FieldMatrix(q, np.array(rows, dtype=np.int64))


@st.composite
def matrix_and_counts(draw, q=None, bound=4):
    H = draw(field_matrices(q=q))
    flat = draw(st.lists(st.integers(0, bound), min_size=(H.q - 1) * H.cols, max_size=(H.q - 1) * H.cols))
    return H, np.array(flat, dtype=np.int64).reshape(H.q - 1, H.cols)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
