"""BPSK mapping, AWGN corruption and channel LLRs.

Conventions: symbols carry unit energy (+1 for bit 0, -1 for bit 1) and
Es = rate * Eb, so sigma**2 = 1 / (2 * rate * 10**(ebn0_db/10)).  Positive
LLRs favour bit 0.

Noise is drawn from PCG64 generators seeded per frame through
SeedSequence((seed, frame_index)), so Monte-Carlo workers can process frames
in any order without changing results.  Gaussian variates come from the
basic Box-Muller transform (two uniforms in, two normals out, no rejection),
which keeps the draw count per frame fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ChannelSpec",
    "sigma_from_ebn0",
    "frame_rng",
    "gaussian",
    "modulate",
    "transmit",
    "channel_llr",
]


@dataclass(frozen=True)
class ChannelSpec:
    ebn0_db: float
    rate: Fraction
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate < 1:
            raise ValueError(f"rate must be in (0, 1), got {self.rate}")

    @property
    def sigma(self) -> float:
        return sigma_from_ebn0(self.ebn0_db, self.rate)


def sigma_from_ebn0(ebn0_db: float, rate) -> float:
    """Noise standard deviation for unit-energy BPSK at the given Eb/N0."""
    rate = float(rate)
    if not 0 < rate <= 1:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def frame_rng(seed: int, frame_index: int = 0) -> np.random.Generator:
    """Independent substream for one frame of one run."""
    return np.random.default_rng(np.random.SeedSequence((seed, frame_index)))


def gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    """n standard normal variates via the Box-Muller transform."""
    half = (n + 1) // 2
    u1 = 1.0 - rng.random(half)  # (0, 1]; keeps log finite
    u2 = rng.random(half)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * half)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:n]


def modulate(bits: np.ndarray) -> np.ndarray:
    """BPSK map: bit 0 -> +1.0, bit 1 -> -1.0."""
    bits = np.asarray(bits)
    return 1.0 - 2.0 * bits.astype(np.float64)


def transmit(bits: np.ndarray, spec: ChannelSpec, frame_index: int = 0) -> np.ndarray:
    """Modulate and add seeded AWGN; deterministic per (seed, frame_index)."""
    x = modulate(bits)
    rng = frame_rng(spec.seed, frame_index)
    return x + spec.sigma * gaussian(rng, len(x))


def channel_llr(received: np.ndarray, sigma: float) -> np.ndarray:
    """LLRs 2*y/sigma**2 for BPSK over AWGN."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return 2.0 * np.asarray(received, dtype=np.float64) / (sigma * sigma)
