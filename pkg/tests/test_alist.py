import numpy as np
import pytest

from hqcldpc.alist import AlistFormatError, from_alist, to_alist
from hqcldpc.hqc import HqcConfig, construct_hqc
from hqcldpc.matrix import SparseBinaryMatrix


def test_all_ones_core_layout():
    core = construct_hqc(HqcConfig.for_rate("1/2", 6, 1, 1, 1, seed=0))
    text = to_alist(core)
    lines = text.splitlines()
    assert lines[0] == "6 3"
    assert lines[1] == "3 6"
    assert lines[2] == "3 3 3 3 3 3"
    assert lines[3] == "6 6 6"
    assert lines[4:10] == ["1 2 3"] * 6
    assert lines[10:13] == ["1 2 3 4 5 6"] * 3
    assert text.endswith("\n")


def test_round_trip_576(h576):
    assert from_alist(to_alist(h576)) == h576


def test_round_trip_irregular():
    dense = np.array([[1, 1, 0, 1], [0, 1, 1, 0], [1, 0, 0, 0]], dtype=np.uint8)
    H = SparseBinaryMatrix.from_dense(dense)
    assert from_alist(to_alist(H)) == H


def test_degree_mismatch_reports_line():
    # row 1 claims degree 6 but lists 5 entries
    text = (
        "6 1\n1 6\n1 1 1 1 1 1\n6\n"
        "1\n1\n1\n1\n1\n1\n"
        "1 2 3 4 5\n"
    )
    with pytest.raises(AlistFormatError) as err:
        from_alist(text)
    assert err.value.line == 11
    assert "5 entries" in str(err.value)


def test_bad_index_reports_line():
    text = "2 2\n1 1\n1 1\n1 1\n1\n9\n1\n2\n"
    with pytest.raises(AlistFormatError) as err:
        from_alist(text)
    assert err.value.line == 6


def test_inconsistent_views_rejected():
    # column lists say H = [[1,0],[0,1]], row lists disagree
    text = "2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n"
    with pytest.raises(AlistFormatError):
        from_alist(text)


def test_non_integer_token():
    with pytest.raises(AlistFormatError) as err:
        from_alist("2 x\n")
    assert err.value.line == 1


def test_truncated_input():
    with pytest.raises(AlistFormatError):
        from_alist("4 2\n1 2\n1 1 1 1\n2 2\n1\n2\n1\n")


def test_byte_identical_output(h576):
    assert to_alist(h576) == to_alist(h576)
