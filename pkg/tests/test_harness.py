import numpy as np
import pytest

from hqcldpc.harness import (
    CSV_HEADER,
    StopRule,
    SweepSpec,
    format_csv,
    run_point,
    run_sweep,
    wilson_interval,
)
from hqcldpc.hqc import catalog_config


def small_spec(**kw):
    defaults = dict(
        code=catalog_config("wimax-576", seed=1),
        ebn0_points=(2.0, 3.0),
        stop=StopRule(min_bit_errors=50, max_frames=2000),
        master_seed=7,
    )
    defaults.update(kw)
    return SweepSpec(**defaults)


def test_spec_validation():
    with pytest.raises(ValueError, match="increasing"):
        small_spec(ebn0_points=(3.0, 2.0))
    with pytest.raises(ValueError, match="mode"):
        small_spec(mode="fancy")
    with pytest.raises(ValueError):
        StopRule(min_bit_errors=0)


def test_stopping_rule_exact_frame():
    spec = small_spec(stop=StopRule(min_bit_errors=30, max_frames=2000))
    point = run_point(spec, 2.0)
    assert point.bit_errors >= 30
    # the point ends at the first frame crossing the threshold, so removing
    # the last frame must drop below it
    spec_more = small_spec(stop=StopRule(min_bit_errors=31, max_frames=2000))
    point_more = run_point(spec_more, 2.0)
    assert point_more.frames >= point.frames


def test_max_frames_cap():
    spec = small_spec(stop=StopRule(min_bit_errors=10**9, max_frames=64))
    point = run_point(spec, 3.0)
    assert point.frames == 64


def test_point_fields_consistent():
    spec = small_spec()
    p = run_point(spec, 2.0)
    assert p.ber == pytest.approx(p.bit_errors / (p.frames * 576))
    assert 1.0 <= p.avg_iterations <= 10.0
    assert 0.0 <= p.fer <= 1.0
    assert p.ber_ci_lo <= p.ber <= p.ber_ci_hi
    assert p.wall_seconds >= 0


def test_determinism_and_worker_independence():
    base = small_spec(stop=StopRule(min_bit_errors=40, max_frames=500))
    a = run_point(base, 2.5)
    b = run_point(small_spec(stop=StopRule(min_bit_errors=40, max_frames=500)), 2.5)
    w4 = run_point(small_spec(stop=StopRule(min_bit_errors=40, max_frames=500), workers=4), 2.5)
    for other in (b, w4):
        assert other.frames == a.frames
        assert other.bit_errors == a.bit_errors
        assert other.avg_iterations == a.avg_iterations
        assert other.fer == a.fer


def test_encoded_mode_counts_information_bits(enc576):
    spec = small_spec(mode="encoded", stop=StopRule(min_bit_errors=20, max_frames=300))
    p = run_point(spec, 2.0)
    assert p.ber == pytest.approx(p.bit_errors / (p.frames * enc576.k))


def test_allzero_and_encoded_agree_within_tolerance():
    # Channel symmetry makes the all-bit BER of the two modes identical in
    # distribution; errors burst within frames, so standard errors come from
    # per-frame counts (frames are the independent unit), not per-bit ones.
    from hqcldpc.decoder import MinSumDecoder
    from hqcldpc.harness import _PointRunner

    frames = 4000
    per_batch = 500
    errs = {}
    for mode in ("allzero", "encoded"):
        spec = small_spec(mode=mode)
        runner = _PointRunner(spec)
        counts = []
        for start in range(0, frames, per_batch):
            _, all_errs, _ = runner._simulate_batch(
                3.0, start, per_batch, MinSumDecoder(runner.h, spec.decoder))
            counts.extend(int(e) for e in all_errs)
        errs[mode] = np.array(counts, dtype=np.float64)
    n = 576
    ber = {m: errs[m].sum() / (frames * n) for m in errs}
    se = {m: errs[m].std(ddof=1) / (n * frames**0.5) for m in errs}
    gap = abs(ber["allzero"] - ber["encoded"])
    assert gap <= 3 * (se["allzero"] ** 2 + se["encoded"] ** 2) ** 0.5


def test_codeword_ber_reported_in_both_modes():
    stop = StopRule(min_bit_errors=30, max_frames=300)
    pa = run_point(small_spec(stop=stop), 2.0)
    assert pa.codeword_bit_errors == pa.bit_errors  # allzero: same counting
    pe = run_point(small_spec(stop=stop, mode="encoded"), 2.0)
    assert pe.codeword_bit_errors >= pe.bit_errors  # info positions are a subset
    assert pe.codeword_ber == pytest.approx(
        pe.codeword_bit_errors / (pe.frames * 576))


def test_run_sweep_csv(tmp_path):
    spec = small_spec(stop=StopRule(min_bit_errors=20, max_frames=200))
    csv_path = tmp_path / "out.csv"
    points = run_sweep(spec, csv_path=csv_path)
    text = csv_path.read_text()
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + len(spec.ebn0_points)
    assert len(points) == 2

    # rerun: identical apart from the wall_seconds column
    points2 = run_sweep(spec)
    def strip_wall(pts):
        return [
            (p.ebn0_db, p.frames, p.bit_errors, p.ber, p.fer, p.avg_iterations)
            for p in pts
        ]
    assert strip_wall(points) == strip_wall(points2)
    body = [",".join(l.split(",")[:-1]) for l in format_csv(points).splitlines()]
    body2 = [",".join(l.split(",")[:-1]) for l in format_csv(points2).splitlines()]
    assert body == body2


def test_high_snr_point_reports_zero_ber():
    spec = small_spec(stop=StopRule(min_bit_errors=1, max_frames=1000))
    p = run_point(spec, 8.0)
    assert p.frames == 1000
    assert p.bit_errors == 0
    assert p.ber == 0.0
    assert 1.0 <= p.avg_iterations < 1.1  # nearly everything settles first pass


def test_low_snr_point_saturates_iterations():
    spec = SweepSpec(
        code=catalog_config("wimax-2304", seed=1),
        ebn0_points=(0.0,),
        stop=StopRule(min_bit_errors=100, max_frames=50),
        master_seed=3,
    )
    p = run_point(spec, 0.0)
    assert p.ber > 1e-2
    assert p.avg_iterations == pytest.approx(10.0)  # nothing converges at 0 dB


def test_wilson_interval_sane():
    lo, hi = wilson_interval(0, 1000)
    assert lo == 0.0 and hi < 0.01
    lo, hi = wilson_interval(500, 1000)
    assert lo < 0.5 < hi
    assert wilson_interval(0, 0) == (0.0, 1.0)
