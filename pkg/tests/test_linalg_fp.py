"""F_p 線性代數"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from services import linalg_fp_service as fp

P = 11

matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(0, P - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
).map(lambda rows: np.array(rows, dtype=np.int64))


@given(matrices)
def test_rank_nullity(matrix):
    kernel = fp.nullspace(matrix, P)
    assert fp.rank(matrix, P) + len(kernel) == matrix.shape[1]
    if len(kernel):
        assert not ((matrix @ kernel.T) % P).any()


@given(matrices)
def test_solve_consistent_system(matrix):
    x = np.arange(1, matrix.shape[1] + 1, dtype=np.int64)
    rhs = (matrix @ x) % P
    found = fp.solve(matrix, rhs, P)
    assert found is not None
    assert np.array_equal((matrix @ found) % P, rhs)


def test_solve_inconsistent():
    assert fp.solve(np.array([[1, 0], [1, 0]]), np.array([0, 1]), P) is None


def test_inverse():
    m = np.array([[2, 1], [1, 1]], dtype=np.int64)
    assert np.array_equal((m @ fp.inverse(m, P)) % P, np.eye(2, dtype=np.int64))
    with pytest.raises(ValueError):
        fp.inverse(np.array([[1, 2], [2, 4]]), P)


def test_complement_basis_spans():
    sub = np.array([[1, 1, 0]], dtype=np.int64)
    extra = fp.complement_basis(sub, 3, P)
    assert len(extra) == 2
    assert fp.rank(np.vstack([sub, extra]), P) == 3


def test_row_basis_of_empty():
    assert fp.row_basis(np.zeros((0, 3), dtype=np.int64), P).shape == (0, 3)
