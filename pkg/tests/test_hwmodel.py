import warnings
from fractions import Fraction

import pytest

from hqcldpc.hwmodel import (
    PIPELINE_LATENCY,
    REFERENCE_IMPLEMENTATIONS,
    DivisibilityError,
    clocks_per_iteration,
    format_report_table,
    throughput,
    timing_report,
)


def test_worked_example():
    assert clocks_per_iteration(2304, Fraction(1, 2), 96) == (24, 12, 42)


@pytest.mark.parametrize("p,expected", [(16, 222), (48, 78), (96, 42), (144, 30)])
def test_clocks_across_parallelism(p, expected):
    j, k, n_it = clocks_per_iteration(2304, "1/2", p)
    assert n_it == expected
    assert k == j // 2  # rate 1/2 keeps K = J/2


def test_latency_constant():
    assert PIPELINE_LATENCY == 6
    j, k, n_it = clocks_per_iteration(576, "1/2", 16)
    assert n_it == j + k + 6


def test_divisibility_errors_report_quotient():
    with pytest.raises(DivisibilityError, match="2304/100"):
        clocks_per_iteration(2304, "1/2", 100)
    # J divides but K does not: K = 150/4
    with pytest.raises(DivisibilityError, match="rate"):
        clocks_per_iteration(300, "1/2", 4)


def test_throughput_reference_point():
    t = throughput(2304, "1/2", 96, 82e6, 7.5)
    assert t == pytest.approx(299.89e6, rel=2e-4)
    assert abs(t - 300e6) / 300e6 < 0.002
    assert throughput(2304, "1/2", 96, 82e6, 1.0) == pytest.approx(7.5 * t, rel=1e-12)


def test_throughput_monotonicity():
    base = throughput(2304, "1/2", 96, 82e6, 7.5)
    assert throughput(2304, "1/2", 96, 82e6, 8.0) < base
    assert throughput(2304, "1/2", 96, 90e6, 7.5) > base


def test_implied_iterations_from_reference_throughput():
    # invert the throughput relation at P=144, 114 MHz, 548 Mbps
    n_it = clocks_per_iteration(2304, "1/2", 144)[2]
    implied = 1152 * 114e6 / (n_it * 548e6)
    assert implied == pytest.approx(7.99, abs=0.01)


def test_strict_mode_warns_on_asymmetric_rate():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        j, k, n_it = clocks_per_iteration(2400, "2/3", 8, strict_check_nodes=True)
    assert k == 100  # (1 - 2/3) * 2400 / 8
    assert any("differs" in str(w.message) for w in caught)
    # rate 1/2: both forms agree, no warning
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        clocks_per_iteration(2304, "1/2", 96, strict_check_nodes=True)
    assert not caught


def test_validation():
    with pytest.raises(ValueError):
        clocks_per_iteration(2304, "3/2", 96)
    with pytest.raises(ValueError):
        throughput(2304, "1/2", 96, 0.0, 7.5)
    with pytest.raises(ValueError):
        throughput(2304, "1/2", 96, 82e6, 0.5)


def test_timing_report_fields():
    rep = timing_report(2304, "1/2", 96, 82e6, 7.5)
    assert (rep.j_cycles, rep.k_cycles, rep.n_it) == (24, 12, 42)
    assert rep.latency == 6
    assert rep.throughput_bps == pytest.approx(299.89e6, rel=2e-4)


def test_report_table_mirrors_reference_rows():
    table = format_report_table(2304, "1/2", [16, 48, 96, 144])
    assert "222" in table and "78" in table and "42" in table and "30" in table
    for p, ref in REFERENCE_IMPLEMENTATIONS.items():
        assert str(ref["luts"]) in table
    assert "not computed" in table
