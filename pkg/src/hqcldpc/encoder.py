"""Systematic GF(2) encoding derived from a parity-check matrix.

The encoder comes from Gauss-Jordan elimination over GF(2) with column
pivoting.  Pivot columns become parity positions, the remaining columns
carry the message verbatim, and rank deficiency simply enlarges the message
space (dependent check rows are dropped, never rejected).  Row operations
run on a bit-packed matrix (64 columns per word) so the desk-scale code
lengths eliminate in well under a second.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import SparseBinaryMatrix

__all__ = ["SystematicEncoder", "derive_encoder", "syndrome"]


def _pack(H: SparseBinaryMatrix) -> np.ndarray:
    words = (H.cols + 63) // 64
    mat = np.zeros((H.rows, words), dtype=np.uint64)
    r, c = H.entries()
    np.bitwise_or.at(mat, (r, c // 64), np.uint64(1) << (c % 64).astype(np.uint64))
    return mat


@dataclass(frozen=True)
class SystematicEncoder:
    """Immutable encoder for one parity-check matrix.

    col_perm lists the parity columns (rank of them) followed by the message
    columns, in H's column numbering.  parity_gen maps a length-k message to
    the rank parity bits.
    """

    h: SparseBinaryMatrix
    col_perm: np.ndarray
    rank: int
    parity_gen: np.ndarray  # shape (rank, k), uint8

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def k(self) -> int:
        return self.h.cols - self.rank

    @property
    def message_columns(self) -> np.ndarray:
        return self.col_perm[self.rank:]

    @property
    def parity_columns(self) -> np.ndarray:
        return self.col_perm[:self.rank]

    def encode(self, msg: np.ndarray) -> np.ndarray:
        """Encode one message (length k) or a batch of shape (B, k)."""
        msg = np.asarray(msg, dtype=np.uint8)
        single = msg.ndim == 1
        batch = msg[None, :] if single else msg
        if batch.shape[1] != self.k:
            raise ValueError(f"message length must be {self.k}, got {batch.shape[1]}")
        # float32 matmul hits BLAS and stays exact (sums are far below 2**24)
        parity = (batch.astype(np.float32) @ self.parity_gen.T.astype(np.float32)).astype(np.int64) & 1
        out = np.zeros((batch.shape[0], self.n), dtype=np.uint8)
        out[:, self.message_columns] = batch
        out[:, self.parity_columns] = parity.astype(np.uint8)
        return out[0] if single else out

    def extract_message(self, codeword: np.ndarray) -> np.ndarray:
        """Read the systematic positions back out of codeword(s)."""
        codeword = np.asarray(codeword)
        return codeword[..., self.message_columns]


def derive_encoder(H: SparseBinaryMatrix) -> SystematicEncoder:
    mat = _pack(H)
    M, n = H.rows, H.cols
    pivot_cols = []
    r = 0
    for j in range(n):
        wj = j // 64
        bj = np.uint64(1) << np.uint64(j % 64)
        below = np.flatnonzero((mat[r:, wj] & bj) != 0)
        if len(below) == 0:
            continue
        piv = r + int(below[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        hit = np.flatnonzero((mat[:, wj] & bj) != 0)
        hit = hit[hit != r]
        if len(hit):
            mat[hit] ^= mat[r]
        pivot_cols.append(j)
        r += 1
        if r == M:
            break
    rank = r
    free_cols = np.setdiff1d(np.arange(n), np.array(pivot_cols, dtype=np.int64))
    col_perm = np.concatenate([np.array(pivot_cols, dtype=np.int64), free_cols])

    # Row i of the reduced matrix reads pivot_i = sum of A[i, :] over free
    # columns, so A is exactly the parity generator.
    k = n - rank
    parity_gen = np.zeros((rank, k), dtype=np.uint8)
    for idx, j in enumerate(free_cols):
        wj = j // 64
        bj = np.uint64(1) << np.uint64(j % 64)
        parity_gen[:, idx] = ((mat[:rank, wj] & bj) != 0).astype(np.uint8)
    return SystematicEncoder(H, col_perm, rank, parity_gen)


def syndrome(H: SparseBinaryMatrix, word: np.ndarray) -> np.ndarray:
    """Per-check parity of `word`; all-zero exactly for codewords."""
    word = np.asarray(word, dtype=np.uint8)
    if word.shape[-1] != H.cols:
        raise ValueError(f"word length must be {H.cols}, got {word.shape[-1]}")
    out = np.empty(word.shape[:-1] + (H.rows,), dtype=np.uint8)
    for i, cols in enumerate(H.row_adj):
        out[..., i] = word[..., cols].sum(axis=-1) & 1
    return out
