"""Sparse binary parity-check matrices in row/column adjacency form."""

from __future__ import annotations

import numpy as np

__all__ = ["SparseBinaryMatrix", "has_four_cycles", "regularity"]


class SparseBinaryMatrix:
    """A 0/1 matrix stored as sorted per-row and per-column index lists.

    Both adjacency views describe the same matrix; the constructor
    cross-checks them.  Instances are immutable after construction and
    safe to share between threads.
    """

    def __init__(self, rows, cols, row_adj, col_adj, _skip_check=False):
        self.rows = int(rows)
        self.cols = int(cols)
        self.row_adj = [np.asarray(a, dtype=np.int64) for a in row_adj]
        self.col_adj = [np.asarray(a, dtype=np.int64) for a in col_adj]
        if not _skip_check:
            self._validate()

    @classmethod
    def from_entries(cls, rows: int, cols: int, row_idx, col_idx) -> "SparseBinaryMatrix":
        """Build from parallel arrays of (row, col) coordinates of the ones."""
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        if row_idx.shape != col_idx.shape:
            raise ValueError("row and column index arrays must have equal length")
        if len(row_idx) and (row_idx.min() < 0 or row_idx.max() >= rows):
            raise ValueError("row index out of range")
        if len(col_idx) and (col_idx.min() < 0 or col_idx.max() >= cols):
            raise ValueError("column index out of range")

        order = np.lexsort((col_idx, row_idx))
        r_sorted, c_sorted = row_idx[order], col_idx[order]
        if len(r_sorted) > 1:
            same = (r_sorted[1:] == r_sorted[:-1]) & (c_sorted[1:] == c_sorted[:-1])
            if same.any():
                k = int(np.flatnonzero(same)[0])
                raise ValueError(f"duplicate entry at ({r_sorted[k]}, {c_sorted[k]})")
        row_adj = _split_groups(r_sorted, c_sorted, rows)

        order = np.lexsort((row_idx, col_idx))
        r_sorted, c_sorted = row_idx[order], col_idx[order]
        col_adj = _split_groups(c_sorted, r_sorted, cols)
        return cls(rows, cols, row_adj, col_adj, _skip_check=True)

    @classmethod
    def from_dense(cls, dense) -> "SparseBinaryMatrix":
        dense = np.asarray(dense)
        r, c = np.nonzero(dense)
        return cls.from_entries(dense.shape[0], dense.shape[1], r, c)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, cols in enumerate(self.row_adj):
            out[i, cols] = 1
        return out

    def entries(self) -> tuple[np.ndarray, np.ndarray]:
        """All one-positions as (row_index_array, col_index_array), row-major."""
        if not self.row_adj:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        degs = np.array([len(a) for a in self.row_adj])
        r = np.repeat(np.arange(self.rows), degs)
        c = np.concatenate(self.row_adj) if degs.sum() else np.zeros(0, np.int64)
        return r, c

    @property
    def num_entries(self) -> int:
        return sum(len(a) for a in self.row_adj)

    def row_weights(self) -> np.ndarray:
        return np.array([len(a) for a in self.row_adj], dtype=np.int64)

    def col_weights(self) -> np.ndarray:
        return np.array([len(a) for a in self.col_adj], dtype=np.int64)

    def _validate(self):
        if len(self.row_adj) != self.rows or len(self.col_adj) != self.cols:
            raise ValueError("adjacency list count does not match declared shape")
        pairs_r = set()
        for i, cols in enumerate(self.row_adj):
            if len(cols) == 0:
                continue
            if cols.min() < 0 or cols.max() >= self.cols:
                raise ValueError(f"row {i}: column index out of range")
            if len(cols) > 1 and not (np.diff(cols) > 0).all():
                raise ValueError(f"row {i}: indices not strictly increasing")
            pairs_r.update((i, int(j)) for j in cols)
        pairs_c = set()
        for j, rows in enumerate(self.col_adj):
            if len(rows) == 0:
                continue
            if rows.min() < 0 or rows.max() >= self.rows:
                raise ValueError(f"column {j}: row index out of range")
            if len(rows) > 1 and not (np.diff(rows) > 0).all():
                raise ValueError(f"column {j}: indices not strictly increasing")
            pairs_c.update((int(i), j) for i in rows)
        if pairs_r != pairs_c:
            raise ValueError("row and column adjacency describe different matrices")

    def __eq__(self, other):
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(np.array_equal(a, b) for a, b in zip(self.row_adj, other.row_adj))
        )

    def __repr__(self):
        return f"SparseBinaryMatrix({self.rows}x{self.cols}, {self.num_entries} ones)"


def _split_groups(keys, values, n_groups):
    """Split `values` (sorted by `keys`) into per-key lists, 0..n_groups-1."""
    starts = np.searchsorted(keys, np.arange(n_groups + 1))
    return [values[starts[k]:starts[k + 1]] for k in range(n_groups)]


def has_four_cycles(H: SparseBinaryMatrix) -> bool:
    """True iff two rows of H share two or more columns (girth 4)."""
    if H.rows == 0 or H.cols == 0:
        raise ValueError("matrix is empty")
    seen = set()
    for rows in H.col_adj:
        w = len(rows)
        for a in range(w):
            ra = int(rows[a])
            for b in range(a + 1, w):
                key = (ra, int(rows[b]))
                if key in seen:
                    return True
                seen.add(key)
    return False


def regularity(H: SparseBinaryMatrix) -> tuple[set[int], set[int]]:
    """Distinct column weights and distinct row weights of H."""
    if H.rows == 0 or H.cols == 0:
        raise ValueError("matrix is empty")
    return (
        set(int(w) for w in H.col_weights()),
        set(int(w) for w in H.row_weights()),
    )
