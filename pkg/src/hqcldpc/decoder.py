"""Quantized normalized min-sum LDPC decoding with a flooding schedule.

Each iteration runs every variable-node update, then every check-node
update, then takes a hard decision and evaluates the syndrome; decoding
stops early once the syndrome is zero.  Check-to-variable messages start
at zero, so the first variable pass emits the channel LLR on every edge.
A total LLR of exactly zero decides bit 0.

The check update is normalized min-sum: outgoing message = alpha * (product
of signs of the other edges) * (minimum magnitude of the other edges), with
zero inputs carrying sign +1.  In fixed-point mode every stored message is
re-quantized (round half away from zero, saturate symmetrically) after each
update phase.

decode() works frame-at-a-time; decode_batch() runs many frames through the
same vectorized edge arrays and is what the Monte-Carlo harness uses.  A
decoder instance owns mutable scratch and must not be shared across threads;
build one per worker over the same immutable matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix import SparseBinaryMatrix

__all__ = [
    "Quantizer",
    "DecoderParams",
    "DecodeResult",
    "quantize",
    "variable_update",
    "check_update",
    "MinSumDecoder",
    "decode",
]

DEFAULT_FIXED_BITS = 6
DEFAULT_FIXED_STEP = 0.25


@dataclass(frozen=True)
class Quantizer:
    """Symmetric fixed-point grid: multiples of `step`, |value| <= (2**(bits-1)-1)*step."""

    bits: int
    step: float

    def __post_init__(self):
        if not 3 <= self.bits <= 12:
            raise ValueError(f"quantizer bits must be in [3, 12], got {self.bits}")
        if self.step <= 0:
            raise ValueError(f"quantizer step must be positive, got {self.step}")

    @property
    def max_value(self) -> float:
        return (2 ** (self.bits - 1) - 1) * self.step

    def apply(self, values: np.ndarray) -> np.ndarray:
        return quantize(values, self.bits, self.step)


def quantize(values: np.ndarray, bits: int, step: float) -> np.ndarray:
    """Round to the step grid (half away from zero) and saturate."""
    q = Quantizer(bits, step)
    v = np.asarray(values, dtype=np.float64)
    rounded = np.sign(v) * np.floor(np.abs(v) / step + 0.5) * step
    return np.clip(rounded, -q.max_value, q.max_value)


@dataclass(frozen=True)
class DecoderParams:
    max_iterations: int = 10
    scale_alpha: float = 0.75
    quantizer: Quantizer | None = None
    early_stop: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0 < self.scale_alpha <= 1:
            raise ValueError(f"scale_alpha must be in (0, 1], got {self.scale_alpha}")

    @classmethod
    def hardware_fixed(cls, **kw) -> "DecoderParams":
        """The coarse fixed-point profile (6-bit, step 0.25)."""
        return cls(quantizer=Quantizer(DEFAULT_FIXED_BITS, DEFAULT_FIXED_STEP), **kw)


@dataclass
class DecodeResult:
    bits: np.ndarray
    iterations_used: int
    converged: bool
    syndrome_weight_trace: list[int] = field(default_factory=list)


def variable_update(channel_llr: float, incoming) -> tuple[np.ndarray, float]:
    """One variable node: leave-one-out sums of check messages plus the channel LLR.

    Returns (outgoing messages, total).  The hard decision is total < 0.
    """
    incoming = np.asarray(incoming, dtype=np.float64)
    total = channel_llr + incoming.sum()
    return total - incoming, float(total)


def check_update(incoming, alpha: float = 1.0) -> np.ndarray:
    """One check node, normalized min-sum; needs at least two incoming edges."""
    incoming = np.asarray(incoming, dtype=np.float64)
    if incoming.size < 2:
        raise ValueError(f"check node needs row weight >= 2, got {incoming.size}")
    signs = np.where(incoming < 0, -1.0, 1.0)
    sign_prod = signs.prod()
    mags = np.abs(incoming)
    order = np.argsort(mags, kind="stable")
    min1, min2 = mags[order[0]], mags[order[1]]
    out_mag = np.where(np.arange(incoming.size) == order[0], min2, min1)
    return alpha * (sign_prod * signs) * out_mag


class _Edges:
    """Flattened Tanner-graph edges plus the index plumbing for segment ops."""

    def __init__(self, H: SparseBinaryMatrix):
        row_deg = H.row_weights()
        col_deg = H.col_weights()
        if (row_deg < 2).any():
            bad = int(np.flatnonzero(row_deg < 2)[0])
            raise ValueError(f"row {bad} has weight {int(row_deg[bad])}; decoding needs >= 2")
        if (col_deg < 1).any():
            bad = int(np.flatnonzero(col_deg < 1)[0])
            raise ValueError(f"column {bad} has weight 0; every bit needs a check")
        self.rows, self.cols = H.rows, H.cols
        e_row, e_col = H.entries()  # row-major order
        self.e_row, self.e_col = e_row, e_col
        self.count = len(e_row)
        self.row_starts = np.concatenate([[0], np.cumsum(row_deg)[:-1]])
        self.col_order = np.argsort(e_col, kind="stable")
        self.col_starts = np.concatenate([[0], np.cumsum(col_deg)[:-1]])

    def col_sums(self, edge_vals: np.ndarray) -> np.ndarray:
        return np.add.reduceat(edge_vals[self.col_order], self.col_starts, axis=0)


class MinSumDecoder:
    """Reusable decoder bound to one parity-check matrix."""

    def __init__(self, H: SparseBinaryMatrix, params: DecoderParams | None = None):
        self.h = H
        self.params = params or DecoderParams()
        self.edges = _Edges(H)

    def decode(self, llr: np.ndarray) -> DecodeResult:
        return self.decode_batch(np.asarray(llr, dtype=np.float64)[None, :])[0]

    def decode_batch(self, llrs: np.ndarray) -> list[DecodeResult]:
        """Decode a (B, n) batch of channel LLR vectors."""
        p = self.params
        ed = self.edges
        llrs = np.asarray(llrs, dtype=np.float64)
        if llrs.ndim != 2 or llrs.shape[1] != ed.cols:
            raise ValueError(f"LLR batch must have shape (B, {ed.cols})")
        B = llrs.shape[0]
        ch = llrs.T.copy()  # (n, B)
        if p.quantizer is not None:
            ch = p.quantizer.apply(ch)

        bits_out = np.zeros((B, ed.cols), dtype=np.uint8)
        iters = np.zeros(B, dtype=np.int64)
        traces: list[list[int]] = [[] for _ in range(B)]

        active = np.arange(B)  # frames still decoding; converged ones drop out
        c2v = np.zeros((ed.count, B))
        for it in range(1, p.max_iterations + 1):
            # Variable pass: leave-one-out column sums plus the channel LLR.
            totals = ch + ed.col_sums(c2v)  # (n, B_active)
            v2c = totals[ed.e_col] - c2v
            if p.quantizer is not None:
                v2c = p.quantizer.apply(v2c)

            # Check pass: leave-one-out sign product and magnitude minimum.
            signs = np.where(v2c < 0, -1.0, 1.0)
            mags = np.abs(v2c)
            row_sign = np.multiply.reduceat(signs, ed.row_starts, axis=0)
            min1 = np.minimum.reduceat(mags, ed.row_starts, axis=0)
            at_min = mags == min1[ed.e_row]
            n_min = np.add.reduceat(at_min.astype(np.float64), ed.row_starts, axis=0)
            masked = np.where(at_min, np.inf, mags)
            min2 = np.minimum.reduceat(masked, ed.row_starts, axis=0)
            excl_min = np.where(
                at_min,
                np.where(n_min[ed.e_row] > 1, min1[ed.e_row], min2[ed.e_row]),
                min1[ed.e_row],
            )
            c2v = p.scale_alpha * row_sign[ed.e_row] * signs * excl_min
            if p.quantizer is not None:
                c2v = p.quantizer.apply(c2v)

            # Hard decision and syndrome close the iteration.
            totals = ch + ed.col_sums(c2v)
            bits = (totals < 0).astype(np.uint8)  # (n, B_active)
            par = np.add.reduceat(bits[ed.e_col], ed.row_starts, axis=0) & 1
            weights = par.sum(axis=0)

            for pos, b in enumerate(active):
                traces[b].append(int(weights[pos]))
            bits_out[active] = bits.T
            iters[active] = it
            if p.early_stop:
                keep = weights != 0
                if not keep.any():
                    break
                if not keep.all():
                    active = active[keep]
                    ch = ch[:, keep]
                    c2v = c2v[:, keep]

        return [
            DecodeResult(
                bits=bits_out[b],
                iterations_used=int(iters[b]),
                converged=traces[b][-1] == 0 if traces[b] else False,
                syndrome_weight_trace=traces[b],
            )
            for b in range(B)
        ]


def decode(H: SparseBinaryMatrix, llr: np.ndarray, params: DecoderParams | None = None) -> DecodeResult:
    """One-shot decode of a single LLR vector."""
    return MinSumDecoder(H, params).decode(llr)
