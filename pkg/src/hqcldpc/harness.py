"""Monte-Carlo BER/FER sweeps over the BPSK/AWGN channel.

Frames are independent tasks keyed by frame index: every frame draws its
message and noise from a substream seeded by (master_seed, frame_index), so
results do not depend on batch size, worker count or scheduling.  A point
stops at the first frame where the cumulative bit-error count reaches
min_bit_errors, or at max_frames.

Error counting: encoded mode counts errors on the k information positions
with denominator k * frames; all-zero mode transmits the zero codeword
(valid for symmetric channels) and counts over all n bits with denominator
n * frames.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import channel_llr, frame_rng, gaussian, modulate, sigma_from_ebn0
from .decoder import DecoderParams, MinSumDecoder
from .encoder import SystematicEncoder, derive_encoder
from .hqc import HqcConfig, construct_hqc

__all__ = ["StopRule", "SweepSpec", "BerPoint", "run_point", "run_sweep", "write_csv", "CSV_HEADER"]

CSV_HEADER = "ebn0_db,frames,bit_errors,ber,ber_ci_lo,ber_ci_hi,fer,avg_iterations,wall_seconds"


@dataclass(frozen=True)
class StopRule:
    min_bit_errors: int = 100
    max_frames: int = 10**6

    def __post_init__(self):
        if self.min_bit_errors < 1:
            raise ValueError("min_bit_errors must be at least 1")
        if self.max_frames < 1:
            raise ValueError("max_frames must be at least 1")


@dataclass(frozen=True)
class SweepSpec:
    code: HqcConfig
    decoder: DecoderParams = field(default_factory=DecoderParams)
    ebn0_points: tuple[float, ...] = (2.0, 2.5, 3.0, 3.5, 4.0)
    stop: StopRule = field(default_factory=StopRule)
    mode: str = "allzero"  # "allzero" | "encoded"
    master_seed: int = 0
    workers: int = 1
    batch_frames: int = 256

    def __post_init__(self):
        if self.mode not in ("allzero", "encoded"):
            raise ValueError(f"mode must be 'allzero' or 'encoded', got {self.mode!r}")
        pts = tuple(float(p) for p in self.ebn0_points)
        if not pts or any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("ebn0_points must be nonempty and strictly increasing")
        object.__setattr__(self, "ebn0_points", pts)
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class BerPoint:
    """One sweep point.

    `ber` is the headline figure: information-bit errors over k*frames in
    encoded mode, all-bit errors over n*frames in all-zero mode.  The
    codeword_* fields always carry the all-bit figures (identical to the
    headline in all-zero mode), which is what channel-symmetry comparisons
    between the modes should use.
    """

    ebn0_db: float
    frames: int
    bit_errors: int
    ber: float
    ber_ci_lo: float
    ber_ci_hi: float
    fer: float
    avg_iterations: float
    wall_seconds: float
    codeword_bit_errors: int = 0
    codeword_ber: float = 0.0


def wilson_interval(errors: int, total: int, z: float = 1.959964) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if total == 0:
        return 0.0, 1.0
    phat = errors / total
    denom = 1 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == total else min(1.0, center + half)
    return lo, hi


class _PointRunner:
    """Shared immutable state for one sweep; one decoder instance per worker."""

    def __init__(self, spec: SweepSpec):
        self.spec = spec
        self.h = construct_hqc(spec.code)
        self.encoder: SystematicEncoder | None = (
            derive_encoder(self.h) if spec.mode == "encoded" else None
        )
        self.n = self.h.cols
        self.rate = spec.code.rate
        # Keep per-batch edge arrays around a few million elements.
        edges = self.h.num_entries
        self.batch = max(1, min(spec.batch_frames, 4_000_000 // max(1, edges)))

    def _simulate_batch(self, ebn0_db: float, start: int, count: int,
                        decoder: MinSumDecoder):
        """Per-frame (info_errors, all_bit_errors, iterations) for a frame range."""
        spec = self.spec
        sigma = sigma_from_ebn0(ebn0_db, self.rate)
        n = self.n
        if spec.mode == "encoded":
            enc = self.encoder
            msgs = np.empty((count, enc.k), dtype=np.uint8)
            noise = np.empty((count, n))
            for b in range(count):
                rng = frame_rng(spec.master_seed, start + b)
                msgs[b] = rng.integers(0, 2, enc.k, dtype=np.uint8)
                noise[b] = gaussian(rng, n)
            codewords = enc.encode(msgs)
            received = modulate(codewords) + sigma * noise
            llrs = channel_llr(received, sigma)
            results = decoder.decode_batch(llrs)
            decoded = np.stack([r.bits for r in results])
            errs = (enc.extract_message(decoded) != msgs).sum(axis=1)
            all_errs = (decoded != codewords).sum(axis=1)
        else:
            noise = np.empty((count, n))
            for b in range(count):
                rng = frame_rng(spec.master_seed, start + b)
                noise[b] = gaussian(rng, n)
            received = 1.0 + sigma * noise
            llrs = channel_llr(received, sigma)
            results = decoder.decode_batch(llrs)
            errs = np.array([int(r.bits.sum()) for r in results])
            all_errs = errs
        iters = np.array([r.iterations_used for r in results])
        return errs, all_errs, iters

    def run_point(self, ebn0_db: float) -> BerPoint:
        spec = self.spec
        t0 = time.perf_counter()
        per_bits = self.encoder.k if spec.mode == "encoded" else self.n
        errors_by_frame: list[int] = []
        all_errors_by_frame: list[int] = []
        iters_by_frame: list[int] = []
        next_frame = 0
        stop_at = None
        while stop_at is None and next_frame < spec.stop.max_frames:
            todo = min(self.batch * spec.workers,
                       spec.stop.max_frames - next_frame)
            chunks = []
            s = next_frame
            while s < next_frame + todo:
                c = min(self.batch, next_frame + todo - s)
                chunks.append((s, c))
                s += c
            if spec.workers > 1 and len(chunks) > 1:
                with ThreadPoolExecutor(max_workers=spec.workers) as pool:
                    outs = list(pool.map(
                        lambda sc: self._simulate_batch(
                            ebn0_db, sc[0], sc[1], MinSumDecoder(self.h, spec.decoder)),
                        chunks,
                    ))
            else:
                dec = MinSumDecoder(self.h, spec.decoder)
                outs = [self._simulate_batch(ebn0_db, s, c, dec) for s, c in chunks]
            for errs, all_errs, iters in outs:
                errors_by_frame.extend(int(e) for e in errs)
                all_errors_by_frame.extend(int(e) for e in all_errs)
                iters_by_frame.extend(int(i) for i in iters)
            next_frame += todo
            cum = 0
            for idx, e in enumerate(errors_by_frame):
                cum += e
                if cum >= spec.stop.min_bit_errors:
                    stop_at = idx + 1
                    break
        frames = stop_at if stop_at is not None else len(errors_by_frame)
        errors_by_frame = errors_by_frame[:frames]
        all_errors_by_frame = all_errors_by_frame[:frames]
        iters_by_frame = iters_by_frame[:frames]
        bit_errors = sum(errors_by_frame)
        all_bit_errors = sum(all_errors_by_frame)
        total_bits = frames * per_bits
        ci_lo, ci_hi = wilson_interval(bit_errors, total_bits)
        return BerPoint(
            ebn0_db=float(ebn0_db),
            frames=frames,
            bit_errors=bit_errors,
            ber=bit_errors / total_bits if total_bits else 0.0,
            ber_ci_lo=ci_lo,
            ber_ci_hi=ci_hi,
            fer=sum(1 for e in errors_by_frame if e) / frames if frames else 0.0,
            avg_iterations=sum(iters_by_frame) / frames if frames else 0.0,
            wall_seconds=time.perf_counter() - t0,
            codeword_bit_errors=all_bit_errors,
            codeword_ber=all_bit_errors / (frames * self.n) if frames else 0.0,
        )


def run_point(spec: SweepSpec, ebn0_db: float) -> BerPoint:
    return _PointRunner(spec).run_point(ebn0_db)


def run_sweep(spec: SweepSpec, csv_path=None) -> list[BerPoint]:
    """One BerPoint per Eb/N0 value; optionally also written as CSV."""
    runner = _PointRunner(spec)
    points = [runner.run_point(p) for p in spec.ebn0_points]
    if csv_path is not None:
        write_csv(points, csv_path)
    return points


def format_csv(points) -> str:
    lines = [CSV_HEADER]
    for p in points:
        lines.append(
            f"{p.ebn0_db:g},{p.frames},{p.bit_errors},{p.ber:.6e},"
            f"{p.ber_ci_lo:.6e},{p.ber_ci_hi:.6e},{p.fer:.6e},"
            f"{p.avg_iterations:.4f},{p.wall_seconds:.3f}"
        )
    return "\n".join(lines) + "\n"


def write_csv(points, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_csv(points))
