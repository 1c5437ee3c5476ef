import math

import numpy as np
import pytest

from hqcldpc.pipeline import (
    HEADER_LEN,
    ErrorReport,
    FrameHeader,
    PipelineError,
    PipelineParams,
    RawImage,
    llr_frames_from_container,
    protect,
    psnr,
    read_pnm,
    recover,
    write_pnm,
)

RNG = np.random.default_rng(123)

P576 = PipelineParams(ldpc_config_id=0, rs_n=255, rs_k=223,
                      header_protect=64, tail_protect=8)
P576_RAW = PipelineParams(ldpc_config_id=0, rs_n=0, rs_k=0,
                          header_protect=0, tail_protect=0)


def test_header_round_trip():
    h = FrameHeader(3, 255, 223, 1024, 64, 123456789)
    raw = h.pack()
    assert len(raw) == HEADER_LEN == 25
    assert raw[:4] == b"HQCM"
    assert FrameHeader.unpack(raw) == h


def test_header_rejects_bad_magic():
    h = FrameHeader(0, 0, 0, 0, 0, 10).pack()
    with pytest.raises(PipelineError, match="magic"):
        FrameHeader.unpack(b"XXXX" + h[4:])


def test_header_big_endian_layout():
    raw = FrameHeader(0x0102, 7, 3, 0x01020304, 5, 0x1122334455667788).pack()
    assert raw[5:7] == bytes([1, 2])
    assert raw[9:13] == bytes([1, 2, 3, 4])
    assert raw[17:25] == bytes([0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88])


def test_params_validation():
    with pytest.raises(PipelineError):
        PipelineParams(ldpc_config_id=999)
    with pytest.raises(PipelineError):
        PipelineParams(rs_n=255, rs_k=0)
    with pytest.raises(PipelineError):
        PipelineParams(rs_n=255, rs_k=222)  # odd parity


def test_protected_length_arithmetic():
    p = PipelineParams(ldpc_config_id=0, rs_n=255, rs_k=223,
                       header_protect=64, tail_protect=2)
    parity = 255 - 223
    blocks = math.ceil(64 / 223) + math.ceil(2 / 223)
    assert p.stream_len(10_000) == 10_000 + HEADER_LEN + blocks * parity


def test_round_trip_rs_disabled():
    data = RNG.integers(0, 256, 4096, dtype=np.uint8).tobytes()
    cont = protect(data, P576_RAW)
    out, report = recover(llr_frames_from_container(cont, P576_RAW), P576_RAW,
                          reference=data)
    assert out == data
    assert report.residual_byte_errors == 0
    assert report.frames_converged == report.frames_total


def test_round_trip_rs_enabled_and_tiny_file():
    for size in (73, 1, 4096):
        params = PipelineParams(ldpc_config_id=0, rs_n=255, rs_k=223,
                                header_protect=min(8, size), tail_protect=0)
        data = RNG.integers(0, 256, size, dtype=np.uint8).tobytes()
        out, report = recover(
            llr_frames_from_container(protect(data, params), params), params)
        assert out == data
        assert report.rs_failed_blocks == 0


def test_file_too_small_for_regions():
    with pytest.raises(PipelineError, match="too small"):
        protect(b"abc", PipelineParams(ldpc_config_id=0, header_protect=2, tail_protect=2))
    with pytest.raises(PipelineError, match="empty"):
        protect(b"", P576_RAW)


def test_frame_count_matches_block_arithmetic(enc576):
    data = RNG.integers(0, 256, 2000, dtype=np.uint8).tobytes()
    cont = protect(data, P576_RAW)
    llr = llr_frames_from_container(cont, P576_RAW)
    total_bits = (len(data) + HEADER_LEN) * 8
    assert llr.shape == (math.ceil(total_bits / enc576.k), 576)


def test_header_errors_corrected_by_rs(enc576):
    # fault injection between the two coding layers: tamper <= t bytes inside
    # the RS-coded head region of the stream, LDPC carries it cleanly, and
    # the RS stage must repair the file bit-exactly
    from hqcldpc.pipeline import _rs_encode_region

    data = RNG.integers(0, 256, 3000, dtype=np.uint8).tobytes()
    params = P576
    code = params.rs_code()
    h, t = params.header_protect, params.tail_protect
    header = FrameHeader(params.ldpc_config_id, params.rs_n, params.rs_k,
                         h, t, len(data))
    stream = bytearray(
        header.pack()
        + _rs_encode_region(code, data[:h])
        + data[h:len(data) - t]
        + _rs_encode_region(code, data[len(data) - t:])
    )
    for off in (HEADER_LEN + 3, HEADER_LEN + 11, HEADER_LEN + 40):
        stream[off] ^= 0x5A
    bits = np.unpackbits(np.frombuffer(bytes(stream), dtype=np.uint8))
    k = enc576.k
    frames = -(-len(bits) // k)
    padded = np.zeros(frames * k, dtype=np.uint8)
    padded[: len(bits)] = bits
    codewords = enc576.encode(padded.reshape(frames, k))
    llr = (1.0 - 2.0 * codewords) * 10.0
    out, report = recover(llr, params, reference=data)
    assert out == data
    assert report.rs_corrected_symbols == 3
    assert report.rs_failed_blocks == 0
    assert report.residual_byte_errors == 0


def test_forced_frame_failure_localizes_errors(enc576):
    params = P576_RAW
    data = RNG.integers(0, 256, 3000, dtype=np.uint8).tobytes()
    cont = protect(data, params)
    llr = llr_frames_from_container(cont, params)
    k = enc576.k
    target = 4
    # incoherent low-confidence noise: the frame cannot converge
    llr[target] = np.random.default_rng(9).normal(scale=0.3, size=llr.shape[1])
    out, report = recover(llr, params, reference=data)
    assert not report.frame_converged[target]
    assert report.residual_byte_errors > 0
    # errors confined to the byte span covered by the broken frame
    lo_file = (target * k) // 8 - HEADER_LEN
    hi_file = -(-((target + 1) * k) // 8) - HEADER_LEN
    diffs = [i for i, (a, b) in enumerate(zip(out, data)) if a != b]
    assert diffs
    assert min(diffs) >= lo_file
    assert max(diffs) < hi_file


def test_recover_rejects_wrong_shape():
    with pytest.raises(PipelineError, match="shape"):
        recover(np.zeros(576), P576_RAW)
    with pytest.raises(PipelineError, match="expects"):
        recover(np.zeros((2, 100)), P576_RAW)


def test_header_corruption_reported_with_field():
    data = RNG.integers(0, 256, 1000, dtype=np.uint8).tobytes()
    cont = protect(data, P576_RAW)
    llr = llr_frames_from_container(cont, P576_RAW)
    # kill the first frame entirely: the in-stream header cannot be read
    llr[0] = -llr[0]
    with pytest.raises(PipelineError, match="magic|version|ldpc_config_id|payload_len"):
        recover(llr, P576_RAW)


# ---------------------------------------------------------------------------
# PSNR and PNM

def gray(w, h, fill=0):
    return RawImage(w, h, 1, np.full((h, w, 1), fill, np.uint8))


def test_psnr_identical_is_infinite():
    img = gray(4, 4, 7)
    assert psnr(img, img) == math.inf


def test_psnr_full_scale_difference_is_zero():
    assert psnr(gray(3, 2, 0), gray(3, 2, 255)) == pytest.approx(0.0)


def test_psnr_single_pixel_example():
    a = gray(2, 2, 0)
    px = np.zeros((2, 2, 1), np.uint8)
    px[0, 0, 0] = 2
    b = RawImage(2, 2, 1, px)
    assert psnr(a, b) == pytest.approx(10 * math.log10(65025), abs=1e-9)


def test_psnr_symmetry_and_monotonicity():
    base = gray(8, 8, 100)
    worse = []
    for delta in (1, 3, 9, 27):
        img = gray(8, 8, 100 + delta)
        assert psnr(base, img) == psnr(img, base)
        worse.append(psnr(base, img))
    assert all(a > b for a, b in zip(worse, worse[1:]))


def test_psnr_shape_mismatch():
    with pytest.raises(ValueError, match="differ"):
        psnr(gray(2, 2), gray(3, 2))


def test_pnm_round_trips():
    img = RawImage(5, 3, 1, RNG.integers(0, 256, (3, 5, 1), dtype=np.uint8))
    assert np.array_equal(read_pnm(write_pnm(img)).pixels, img.pixels)
    rgb = RawImage(4, 2, 3, RNG.integers(0, 256, (2, 4, 3), dtype=np.uint8))
    back = read_pnm(write_pnm(rgb))
    assert back.channels == 3
    assert np.array_equal(back.pixels, rgb.pixels)
    # canonical header writes identically after one round trip
    assert write_pnm(back) == write_pnm(rgb)


def test_pnm_header_variants():
    img = read_pnm(b"P5  2\t2\n255\n" + bytes(4))
    assert (img.width, img.height) == (2, 2)
    img = read_pnm(b"P5\n# a comment\n2 2\n# another\n255\n" + bytes(4))
    assert img.channels == 1


def test_pnm_errors():
    with pytest.raises(ValueError, match="magic"):
        read_pnm(b"P3\n2 2\n255\n" + bytes(12))
    with pytest.raises(ValueError, match="maxval"):
        read_pnm(b"P6\n2 2\n65535\n" + bytes(24))
    with pytest.raises(ValueError, match="truncated"):
        read_pnm(b"P5\n4 4\n255\n" + bytes(3))
