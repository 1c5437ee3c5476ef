"""Three-level hierarchical quasi-cyclic LDPC matrix construction.

The matrix is assembled from three levels.  Level 1 is an all-ones core of
`core_rows` x `core_cols` that fixes rate and (col, row) regularity.  Level 2
expands every core element into an N x N circulant arrangement of one
permuted matrix of size R.  Level 3 expands every permuted-matrix entry into
a P x P circularly shifted identity.  Each core row ("layer") draws one fresh
random permuted matrix; a core element (i, j) uses its layer's matrix with
its columns rotated by j and an element-specific offset added to every
base-matrix shift.

Shift convention, used everywhere in this package: a circularly shifted
identity of size P with shift s has its ones at (a, (a + s) mod P).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .matrix import SparseBinaryMatrix, has_four_cycles

__all__ = [
    "HqcConfig",
    "PermutedMatrix",
    "FourCycleError",
    "construct_hqc",
    "CATALOG",
    "catalog_config",
    "preset_names",
]

GIRTH_ATTEMPTS = 64


@dataclass(frozen=True)
class HqcConfig:
    """Full parameter set describing one code instance.

    code_length = core_cols * n_factor * r_factor * p_factor and the check
    count is core_rows times the same expansion.  core_rows must equal
    core_cols * (1 - rate) exactly; rates that would need a fractional row
    count are rejected rather than approximated.
    """

    rate: Fraction
    core_cols: int
    core_rows: int
    n_factor: int
    r_factor: int
    p_factor: int
    seed: int = 1

    def __post_init__(self):
        r = Fraction(self.rate)
        object.__setattr__(self, "rate", r)
        if not 0 < r < 1:
            raise ValueError(f"rate must be in (0, 1), got {r}")
        if self.core_cols < 2:
            raise ValueError("core_cols must be at least 2")
        m_exact = self.core_cols * (1 - r)
        if m_exact.denominator != 1:
            raise ValueError(
                f"rate {r} with {self.core_cols} core columns needs a fractional "
                f"row count {m_exact}; pick a compatible core width"
            )
        if self.core_rows != m_exact:
            raise ValueError(
                f"core_rows must be core_cols*(1-rate) = {m_exact}, got {self.core_rows}"
            )
        if self.core_rows < 1:
            raise ValueError("core_rows must be at least 1")
        for name in ("n_factor", "r_factor", "p_factor"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")

    @classmethod
    def for_rate(cls, rate, core_cols: int, n_factor: int, r_factor: int,
                 p_factor: int, seed: int = 1) -> "HqcConfig":
        """Derive core_rows from the rate and build the config."""
        r = Fraction(rate)
        m_exact = core_cols * (1 - r)
        m = int(m_exact) if m_exact.denominator == 1 else -1
        return cls(r, core_cols, m, n_factor, r_factor, p_factor, seed)

    @property
    def expansion(self) -> int:
        return self.n_factor * self.r_factor * self.p_factor

    @property
    def code_length(self) -> int:
        return self.core_cols * self.expansion

    @property
    def check_count(self) -> int:
        return self.core_rows * self.expansion


@dataclass(frozen=True)
class PermutedMatrix:
    """An R x R permutation support whose entries carry base-matrix shifts.

    `entries` holds one (row, col, shift) triple per row and per column,
    with every shift in [0, p_limit).
    """

    size: int
    p_limit: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        rows = [e[0] for e in self.entries]
        cols = [e[1] for e in self.entries]
        if sorted(rows) != list(range(self.size)) or sorted(cols) != list(range(self.size)):
            raise ValueError("entries must form a permutation support")
        if any(not 0 <= s < self.p_limit for _, _, s in self.entries):
            raise ValueError(f"shifts must lie in [0, {self.p_limit})")

    def rotated(self, y: int) -> "PermutedMatrix":
        """Cyclically rotate the columns by y; shifts travel with positions."""
        return PermutedMatrix(
            self.size, self.p_limit,
            tuple((r, (c + y) % self.size, s) for r, c, s in self.entries),
        )


class FourCycleError(RuntimeError):
    """No 4-cycle-free draw was found within the retry budget."""

    def __init__(self, config: HqcConfig, attempts: int):
        self.config = config
        self.attempts = attempts
        super().__init__(
            f"no 4-cycle-free matrix found in {attempts} attempts for "
            f"code_length={config.code_length} (seed {config.seed})"
        )


def _fisher_yates(n: int, rng: np.random.Generator) -> list[int]:
    perm = list(range(n))
    for a in range(n - 1, 0, -1):
        b = int(rng.integers(0, a + 1))
        perm[a], perm[b] = perm[b], perm[a]
    return perm


def _draw_permuted(size: int, p_limit: int, rng: np.random.Generator) -> PermutedMatrix:
    perm = _fisher_yates(size, rng)
    shifts = rng.integers(0, p_limit, size=size)
    return PermutedMatrix(
        size, p_limit,
        tuple((r, perm[r], int(shifts[r])) for r in range(size)),
    )


def _draw_offsets(m: int, c: int, p_limit: int, rng: np.random.Generator,
                  tries: int = 200) -> np.ndarray:
    """Per-element base-shift offsets, one per core cell.

    Sampled layer by layer so that for every pair of layers the per-column
    offset differences are pairwise distinct mod P; that condition removes
    all cross-layer 4-cycles.  When P is too small for distinctness the last
    candidate is kept and the girth gate downstream decides.
    """
    rows = [rng.integers(0, p_limit, size=c)]
    for _ in range(1, m):
        cand = rng.integers(0, p_limit, size=c)
        for _ in range(tries):
            ok = all(
                len(set(((prev - cand) % p_limit).tolist())) == c
                for prev in rows
            )
            if ok:
                break
            cand = rng.integers(0, p_limit, size=c)
        rows.append(cand)
    return np.stack(rows)


def _expand(config: HqcConfig, layers: list[PermutedMatrix], offsets: np.ndarray) -> SparseBinaryMatrix:
    m, c = config.core_rows, config.core_cols
    N, R, P = config.n_factor, config.r_factor, config.p_factor
    nrp = config.expansion
    base = np.arange(P, dtype=np.int64)
    row_parts, col_parts = [], []
    for i in range(m):
        for j in range(c):
            level2_offset = (i * j) % N
            rotated = layers[i].rotated(j)
            for r, cb, s in rotated.entries:
                shift = (s + int(offsets[i, j])) % P
                cols_in_p = (base + shift) % P
                for b in range(N):
                    bc = (b + level2_offset) % N
                    row_base = i * nrp + (b * R + r) * P
                    col_base = j * nrp + (bc * R + cb) * P
                    row_parts.append(row_base + base)
                    col_parts.append(col_base + cols_in_p)
    return SparseBinaryMatrix.from_entries(
        m * nrp, c * nrp, np.concatenate(row_parts), np.concatenate(col_parts)
    )


def construct_hqc(config: HqcConfig) -> SparseBinaryMatrix:
    """Construct the parity-check matrix for `config`.

    Deterministic for a fixed config (seed included).  Draws are retried
    with derived seeds until the expanded matrix is 4-cycle-free, up to
    GIRTH_ATTEMPTS times; the degenerate expansion of 1 collapses to the
    bare core and is exempt from the girth gate.
    """
    if config.expansion == 1:
        core = np.ones((config.core_rows, config.core_cols), dtype=np.uint8)
        return SparseBinaryMatrix.from_dense(core)
    for attempt in range(GIRTH_ATTEMPTS):
        rng = np.random.default_rng(np.random.SeedSequence((config.seed, attempt)))
        layers = [
            _draw_permuted(config.r_factor, config.p_factor, rng)
            for _ in range(config.core_rows)
        ]
        offsets = _draw_offsets(config.core_rows, config.core_cols, config.p_factor, rng)
        H = _expand(config, layers, offsets)
        if not has_four_cycles(H):
            return H
    raise FourCycleError(config, GIRTH_ATTEMPTS)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    application: str
    code_length: int
    rate: Fraction
    r_factor: int
    n_factor: int
    p_factor: int
    aliases: tuple[str, ...] = field(default=())

    def config(self, seed: int = 1) -> HqcConfig:
        return HqcConfig.for_rate(
            self.rate, 6, self.n_factor, self.r_factor, self.p_factor, seed
        )


def _entry(name, app, cl, rate, r, n, p, aliases=()):
    e = CatalogEntry(name, app, cl, Fraction(rate), r, n, p, tuple(aliases))
    cfg = e.config()
    assert cfg.code_length == cl, name
    return e


# One entry per supported application configuration (all use a width-6 core).
# WiMax expands with P=16, WLAN with P=18, DVB-S2 with P=27.  The rate-5/6
# rows collapse to a single core row, i.e. column weight 1; that degenerate
# regularity is kept as configured and called out in the README.
CATALOG: tuple[CatalogEntry, ...] = (
    _entry("wimax-576", "wimax", 576, "1/2", 6, 1, 16),
    _entry("wimax-672", "wimax", 672, "1/2", 7, 1, 16),
    _entry("wimax-768", "wimax", 768, "1/2", 8, 1, 16),
    _entry("wimax-864", "wimax", 864, "1/2", 9, 1, 16),
    _entry("wimax-960", "wimax", 960, "1/2", 10, 1, 16),
    _entry("wimax-1056", "wimax", 1056, "1/2", 11, 1, 16),
    _entry("wimax-1152", "wimax", 1152, "1/2", 6, 2, 16),
    _entry("wimax-1728", "wimax", 1728, "1/2", 6, 3, 16),
    _entry("wimax-2304", "wimax", 2304, "1/2", 6, 4, 16),
    _entry("wlan-648-r12", "wlan", 648, "1/2", 6, 1, 18, aliases=("wlan-648",)),
    _entry("wlan-1296-r12", "wlan", 1296, "1/2", 6, 2, 18, aliases=("wlan-1296",)),
    _entry("wlan-1944-r12", "wlan", 1944, "1/2", 6, 3, 18, aliases=("wlan-1944",)),
    _entry("wlan-648-r23", "wlan", 648, "2/3", 6, 1, 18),
    _entry("wlan-1296-r23", "wlan", 1296, "2/3", 6, 2, 18),
    _entry("wlan-1944-r23", "wlan", 1944, "2/3", 6, 3, 18),
    _entry("wlan-648-r56", "wlan", 648, "5/6", 6, 1, 18),
    _entry("wlan-1296-r56", "wlan", 1296, "5/6", 6, 2, 18),
    _entry("wlan-1944-r56", "wlan", 1944, "5/6", 6, 3, 18),
    _entry("dvbs2-16200-r13", "dvbs2", 16200, "1/3", 5, 20, 27),
    _entry("dvbs2-16200-r23", "dvbs2", 16200, "2/3", 5, 20, 27),
    _entry("dvbs2-64800-r12", "dvbs2", 64800, "1/2", 8, 50, 27),
    _entry("dvbs2-64800-r13", "dvbs2", 64800, "1/3", 8, 50, 27),
    _entry("dvbs2-64800-r23", "dvbs2", 64800, "2/3", 8, 50, 27),
    _entry("dvbs2-64800-r56", "dvbs2", 64800, "5/6", 8, 50, 27),
)

_BY_NAME = {}
for _e in CATALOG:
    _BY_NAME[_e.name] = _e
    for _a in _e.aliases:
        _BY_NAME[_a] = _e


def preset_names() -> list[str]:
    return [e.name for e in CATALOG]


def catalog_config(name: str, seed: int = 1) -> HqcConfig:
    """Look up a preset by name (aliases allowed) and build its config."""
    try:
        return _BY_NAME[name].config(seed)
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
