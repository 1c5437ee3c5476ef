"""Analytic clock and throughput model of the partially-parallel decoder.

With P processing nodes, the variable-node phase needs J = code_length / P
clocks, the check-node phase K = rate * code_length / P clocks, and one
iteration costs N_it = J + K + L clocks with a fixed pipeline latency of
L = 6.  Decoded throughput is
rate * code_length * clock_hz / (avg_iterations * N_it).

K is written with the code rate (not 1 - rate); for rate 1/2 the two agree.
A strict mode computes the check-node count from 1 - rate instead and warns
when the two differ.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "PIPELINE_LATENCY",
    "DivisibilityError",
    "TimingReport",
    "clocks_per_iteration",
    "throughput",
    "timing_report",
    "format_report_table",
    "REFERENCE_IMPLEMENTATIONS",
]

PIPELINE_LATENCY = 6


class DivisibilityError(ValueError):
    """The parallelism factor does not evenly divide a node count."""


def _exact_div(numerator: Fraction, p: int, what: str):
    q = numerator / p
    if q.denominator != 1:
        raise DivisibilityError(
            f"{what} = {numerator}/{p} = {q} is not an integer; "
            f"pick a parallelism factor dividing {numerator}"
        )
    return int(q)


def clocks_per_iteration(code_length: int, rate, parallel_nodes: int,
                         strict_check_nodes: bool = False) -> tuple[int, int, int]:
    """(J, K, N_it) clock counts for one decoding iteration."""
    rate = Fraction(rate)
    if not 0 < rate < 1:
        raise ValueError(f"rate must be in (0, 1), got {rate}")
    if parallel_nodes < 1 or code_length < 1:
        raise ValueError("code_length and parallel_nodes must be positive")
    j = _exact_div(Fraction(code_length), parallel_nodes, "J = code_length/P")
    k_nominal = _exact_div(rate * code_length, parallel_nodes, "K = rate*code_length/P")
    k = k_nominal
    if strict_check_nodes:
        k_strict = _exact_div((1 - rate) * code_length, parallel_nodes,
                              "K = (1-rate)*code_length/P")
        if k_strict != k_nominal:
            warnings.warn(
                f"check-node count (1-rate)*n/P = {k_strict} differs from the "
                f"rate form {k_nominal}; strict mode uses {k_strict}",
                stacklevel=2,
            )
        k = k_strict
    return j, k, j + k + PIPELINE_LATENCY


def throughput(code_length: int, rate, parallel_nodes: int, clock_hz: float,
               avg_iterations: float, strict_check_nodes: bool = False) -> float:
    """Decoded information bits per second."""
    if clock_hz <= 0:
        raise ValueError("clock_hz must be positive")
    if avg_iterations < 1:
        raise ValueError("avg_iterations must be at least 1")
    _, _, n_it = clocks_per_iteration(code_length, rate, parallel_nodes, strict_check_nodes)
    return float(Fraction(rate)) * code_length * clock_hz / (avg_iterations * n_it)


@dataclass(frozen=True)
class TimingReport:
    code_length: int
    rate: Fraction
    parallel_nodes: int
    j_cycles: int
    k_cycles: int
    latency: int
    n_it: int
    clock_hz: float
    avg_iterations: float
    throughput_bps: float


def timing_report(code_length: int, rate, parallel_nodes: int, clock_hz: float,
                  avg_iterations: float, strict_check_nodes: bool = False) -> TimingReport:
    rate = Fraction(rate)
    j, k, n_it = clocks_per_iteration(code_length, rate, parallel_nodes, strict_check_nodes)
    t = float(rate) * code_length * clock_hz / (avg_iterations * n_it)
    return TimingReport(code_length, rate, parallel_nodes, j, k,
                        PIPELINE_LATENCY, n_it, clock_hz, avg_iterations, t)


# FPGA place-and-route measurements reported for the 2304-bit rate-1/2
# decoder at several parallelism factors.  These are published reference
# numbers echoed in reports for context only; nothing here computes them.
REFERENCE_IMPLEMENTATIONS = {
    16: {"slices": 1137, "luts": 3522, "registers": 847, "brams": 29,
         "memory_bits": 20736, "clock_mhz": 162, "throughput_mbps": 104},
    48: {"slices": 3141, "luts": 9547, "registers": 2024, "brams": 87,
         "memory_bits": 20736, "clock_mhz": 144, "throughput_mbps": 266},
    96: {"slices": 5583, "luts": 18542, "registers": 3992, "brams": 160,
         "memory_bits": 20736, "clock_mhz": 126, "throughput_mbps": 432},
    144: {"slices": 8430, "luts": 27558, "registers": 5961, "brams": 232,
          "memory_bits": 20736, "clock_mhz": 114, "throughput_mbps": 548},
}


def format_report_table(code_length: int, rate, parallel_nodes_list,
                        clock_mhz: float | None = None,
                        avg_iterations: float = 7.5) -> str:
    """Text table of the clock model across parallelism factors.

    When clock_mhz is None and a P value has a reference implementation,
    its measured clock is used for the throughput column; the measured
    resource rows are echoed verbatim and flagged as such.
    """
    rate = Fraction(rate)
    cols = []
    for p in parallel_nodes_list:
        ref = REFERENCE_IMPLEMENTATIONS.get(p)
        mhz = clock_mhz if clock_mhz is not None else (ref["clock_mhz"] if ref else None)
        rep = None
        if mhz is not None:
            rep = timing_report(code_length, rate, p, mhz * 1e6, avg_iterations)
        cols.append((p, ref, mhz, rep))

    def row(label, fmt):
        cells = [f"{label:<28}"]
        for p, ref, mhz, rep in cols:
            cells.append(f"{fmt(p, ref, mhz, rep):>12}")
        return "  ".join(cells)

    lines = [
        f"code length {code_length}, rate {rate}, avg iterations {avg_iterations}",
        row("parallel nodes (P)", lambda p, ref, mhz, rep: str(p)),
        row("J clocks (variable phase)", lambda p, ref, mhz, rep: str(clocks_per_iteration(code_length, rate, p)[0])),
        row("K clocks (check phase)", lambda p, ref, mhz, rep: str(clocks_per_iteration(code_length, rate, p)[1])),
        row("clocks per iteration", lambda p, ref, mhz, rep: str(clocks_per_iteration(code_length, rate, p)[2])),
        row("clock (MHz)", lambda p, ref, mhz, rep: "n/a" if mhz is None else f"{mhz:g}"),
        row("throughput (Mbps)", lambda p, ref, mhz, rep: "n/a" if rep is None else f"{rep.throughput_bps / 1e6:.1f}"),
    ]
    if any(ref for _, ref, _, _ in cols):
        lines.append("measured reference implementation (not computed):")
        for key, label in [("slices", "slices"), ("luts", "LUTs"),
                           ("registers", "registers"), ("brams", "BRAMs (18K)"),
                           ("memory_bits", "memory bits"),
                           ("throughput_mbps", "reported Mbps")]:
            lines.append(row(f"  {label}", lambda p, ref, mhz, rep, k=key: str(ref[k]) if ref else "n/a"))
    return "\n".join(lines) + "\n"
