import numpy as np
import pytest

from hqcldpc.matrix import SparseBinaryMatrix, has_four_cycles, regularity

from oracles import max_shared_columns


def test_from_dense_round_trip():
    rng = np.random.default_rng(0)
    dense = (rng.random((7, 11)) < 0.3).astype(np.uint8)
    H = SparseBinaryMatrix.from_dense(dense)
    assert np.array_equal(H.to_dense(), dense)


def test_cross_consistency_rejected():
    # row view says (0,1), column view says (0,2)
    with pytest.raises(ValueError, match="different matrices"):
        SparseBinaryMatrix(2, 3, [[1], [0]], [[1], [], [0]])


def test_duplicate_entry_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        SparseBinaryMatrix.from_entries(2, 2, [0, 0], [1, 1])


def test_index_out_of_range():
    with pytest.raises(ValueError):
        SparseBinaryMatrix.from_entries(2, 2, [0], [5])


def test_has_four_cycles_identity():
    H = SparseBinaryMatrix.from_dense(np.eye(4, dtype=np.uint8))
    assert has_four_cycles(H) is False


def test_has_four_cycles_all_ones():
    H = SparseBinaryMatrix.from_dense(np.ones((2, 2), dtype=np.uint8))
    assert has_four_cycles(H) is True


def test_has_four_cycles_matches_gram_oracle():
    rng = np.random.default_rng(42)
    for trial in range(50):
        dense = (rng.random((12, 24)) < 0.15).astype(np.uint8)
        H = SparseBinaryMatrix.from_dense(dense)
        assert has_four_cycles(H) == (max_shared_columns(dense) > 1), trial


def test_regularity_counts():
    dense = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    H = SparseBinaryMatrix.from_dense(dense)
    col_w, row_w = regularity(H)
    assert col_w == {1, 2}
    assert row_w == {2}


def test_empty_matrix_rejected():
    H = SparseBinaryMatrix.from_entries(0, 0, [], [])
    with pytest.raises(ValueError):
        has_four_cycles(H)
    with pytest.raises(ValueError):
        regularity(H)


def test_entries_row_major(h576):
    r, c = h576.entries()
    assert len(r) == h576.num_entries == 1728
    # grouped by row, columns ascending within each row
    assert (np.diff(r) >= 0).all()
