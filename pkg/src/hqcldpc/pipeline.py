"""Hybrid RS+LDPC protection of byte streams and PSNR image comparison.

protect() wraps a file for transmission: the first h and last t bytes are
Reed-Solomon coded (shortened blocks as needed), a 25-byte frame header is
prepended, and the whole stream is split into k-bit blocks (zero-padded at
the end), each LDPC-encoded.  The container written to disk is the clear
frame header followed by the frame bits packed MSB-first.  recover() undoes
all of it from per-frame channel LLRs and reports per-frame convergence and
RS corrections.

The header/tail regions are plain length parameters; nothing here parses
image formats.  PSNR is computed separately between caller-supplied PNM
images (P5/P6 binary, 8-bit).

The LDPC construction seed is not part of the wire header; both ends must
agree on it out of band (PipelineParams.ldpc_seed, default 1).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .channel import channel_llr, frame_rng, gaussian, modulate, sigma_from_ebn0
from .decoder import DecoderParams, MinSumDecoder
from .encoder import derive_encoder
from .hqc import CATALOG, construct_hqc
from .rs import GF256, RsCode, RsDecodeError, rs_decode, rs_encode

__all__ = [
    "PipelineError",
    "FrameHeader",
    "PipelineParams",
    "ErrorReport",
    "RawImage",
    "protect",
    "recover",
    "llr_frames_from_container",
    "psnr",
    "read_pnm",
    "write_pnm",
]

MAGIC = b"HQCM"
VERSION = 1
HEADER_STRUCT = struct.Struct(">4sBHBBIIQ")
HEADER_LEN = HEADER_STRUCT.size  # 25 bytes


class PipelineError(ValueError):
    """Protection parameters invalid or recovered stream inconsistent."""


@dataclass(frozen=True)
class FrameHeader:
    """Wire header, all multi-byte fields big-endian."""

    ldpc_config_id: int
    rs_n: int
    rs_k: int
    header_protect: int
    tail_protect: int
    payload_len: int
    version: int = VERSION

    def pack(self) -> bytes:
        return HEADER_STRUCT.pack(
            MAGIC, self.version, self.ldpc_config_id, self.rs_n, self.rs_k,
            self.header_protect, self.tail_protect, self.payload_len,
        )

    @classmethod
    def unpack(cls, raw: bytes) -> "FrameHeader":
        if len(raw) < HEADER_LEN:
            raise PipelineError(f"frame header needs {HEADER_LEN} bytes, got {len(raw)}")
        magic, version, cfg, rs_n, rs_k, h, t, payload = HEADER_STRUCT.unpack(raw[:HEADER_LEN])
        if magic != MAGIC:
            raise PipelineError(f"frame header field 'magic' corrupted: {magic!r}")
        if version != VERSION:
            raise PipelineError(f"frame header field 'version' unsupported: {version}")
        if cfg >= len(CATALOG):
            raise PipelineError(f"frame header field 'ldpc_config_id' out of range: {cfg}")
        return cls(cfg, rs_n, rs_k, h, t, payload, version)


@dataclass(frozen=True)
class PipelineParams:
    """Everything both ends must agree on."""

    ldpc_config_id: int = 8  # wimax-2304
    ldpc_seed: int = 1
    rs_n: int = 255
    rs_k: int = 223
    header_protect: int = 1024
    tail_protect: int = 64
    decoder: DecoderParams = field(default_factory=DecoderParams)

    def __post_init__(self):
        if not 0 <= self.ldpc_config_id < len(CATALOG):
            raise PipelineError(f"ldpc_config_id must index the catalog (0..{len(CATALOG) - 1})")
        if (self.rs_n == 0) != (self.rs_k == 0):
            raise PipelineError("rs_n and rs_k must both be zero (RS off) or both set")
        if self.rs_n:
            if not 1 <= self.rs_k < self.rs_n <= 255:
                raise PipelineError(f"invalid RS({self.rs_n}, {self.rs_k})")
            if (self.rs_n - self.rs_k) % 2:
                raise PipelineError("rs_n - rs_k must be even")
        if self.header_protect < 0 or self.tail_protect < 0:
            raise PipelineError("protected region lengths must be nonnegative")

    @property
    def rs_enabled(self) -> bool:
        return self.rs_n > 0

    def rs_code(self) -> RsCode | None:
        return RsCode(GF256, self.rs_n, self.rs_k) if self.rs_enabled else None

    def ldpc_config(self):
        return CATALOG[self.ldpc_config_id].config(self.ldpc_seed)

    def coded_region_len(self, region_len: int) -> int:
        if not self.rs_enabled or region_len == 0:
            return region_len
        blocks = -(-region_len // self.rs_k)
        return region_len + blocks * (self.rs_n - self.rs_k)

    def stream_len(self, payload_len: int) -> int:
        body = payload_len - self.header_protect - self.tail_protect
        return (HEADER_LEN + self.coded_region_len(self.header_protect)
                + body + self.coded_region_len(self.tail_protect))


@dataclass
class ErrorReport:
    frames_total: int
    frame_converged: list[bool]
    rs_blocks: int = 0
    rs_corrected_symbols: int = 0
    rs_failed_blocks: int = 0
    residual_byte_errors: int | None = None

    @property
    def frames_converged(self) -> int:
        return sum(self.frame_converged)


def _rs_encode_region(code: RsCode, data: bytes) -> bytes:
    out = bytearray()
    for off in range(0, len(data), code.k):
        chunk = data[off:off + code.k]
        short = code.k - len(chunk)  # implicit zero prefix for short blocks
        cw = rs_encode(code, [0] * short + list(chunk))
        out.extend(cw[short:])
    return bytes(out)


def _rs_decode_region(code: RsCode, coded: bytes, plain_len: int):
    """Returns (data, blocks, corrected_symbols, failed_blocks)."""
    out = bytearray()
    blocks = corrected = failed = 0
    off = 0
    remaining = plain_len
    while remaining > 0:
        take = min(code.k, remaining)
        short = code.k - take
        cw = coded[off:off + take + code.parity]
        blocks += 1
        try:
            msg, n_corr = rs_decode(code, [0] * short + list(cw))
            out.extend(msg[short:])
            corrected += n_corr
        except RsDecodeError:
            failed += 1
            out.extend(cw[:take])  # beyond correction: pass through as-is
        off += take + code.parity
        remaining -= take
    return bytes(out), blocks, corrected, failed


_CODEC_CACHE: dict[tuple[int, int], tuple] = {}


def _ldpc_codec(params: PipelineParams):
    key = (params.ldpc_config_id, params.ldpc_seed)
    if key not in _CODEC_CACHE:
        H = construct_hqc(params.ldpc_config())
        _CODEC_CACHE[key] = (H, derive_encoder(H))
    return _CODEC_CACHE[key]


def protect(file_bytes: bytes, params: PipelineParams) -> bytes:
    """Wrap a file into the container: clear header + packed LDPC frame bits."""
    if len(file_bytes) == 0:
        raise PipelineError("cannot protect an empty file")
    h, t = params.header_protect, params.tail_protect
    if h + t > len(file_bytes):
        raise PipelineError(
            f"file of {len(file_bytes)} bytes is too small for protected "
            f"regions h={h} + t={t}"
        )
    header = FrameHeader(params.ldpc_config_id, params.rs_n, params.rs_k,
                         h, t, len(file_bytes))
    head, body, tail = file_bytes[:h], file_bytes[h:len(file_bytes) - t], \
        file_bytes[len(file_bytes) - t:] if t else b""
    code = params.rs_code()
    if code is not None:
        head = _rs_encode_region(code, head)
        tail = _rs_encode_region(code, tail)
    stream = header.pack() + head + body + tail

    _, enc = _ldpc_codec(params)
    k, n = enc.k, enc.n
    bits = np.unpackbits(np.frombuffer(stream, dtype=np.uint8))
    frames = -(-len(bits) // k)
    padded = np.zeros(frames * k, dtype=np.uint8)
    padded[: len(bits)] = bits
    codewords = enc.encode(padded.reshape(frames, k))
    packed = np.packbits(codewords.reshape(-1))
    return header.pack() + packed.tobytes()


def frame_count(params: PipelineParams, payload_len: int) -> int:
    _, enc = _ldpc_codec(params)
    return -(-(params.stream_len(payload_len) * 8) // enc.k)


def llr_frames_from_container(container: bytes, params: PipelineParams,
                              ebn0_db: float | None = None, noise_seed: int = 0,
                              llr_magnitude: float = 12.0) -> np.ndarray:
    """Frame LLRs for recover(), optionally after BPSK/AWGN corruption.

    With ebn0_db None the channel is noiseless and every LLR has magnitude
    `llr_magnitude` with the transmitted sign.
    """
    header = FrameHeader.unpack(container)
    params = _check_clear_header(header, params)
    _, enc = _ldpc_codec(params)
    n = enc.n
    frames = -(-(params.stream_len(header.payload_len) * 8) // enc.k)
    bits = np.unpackbits(np.frombuffer(container[HEADER_LEN:], dtype=np.uint8))
    if len(bits) < frames * n:
        raise PipelineError(
            f"container carries {len(bits)} bits, need {frames * n} for {frames} frames"
        )
    bits = bits[: frames * n].reshape(frames, n)
    symbols = modulate(bits)
    if ebn0_db is None:
        return symbols * llr_magnitude
    rate = params.ldpc_config().rate
    sigma = sigma_from_ebn0(ebn0_db, rate)
    out = np.empty_like(symbols)
    for f in range(frames):
        rng = frame_rng(noise_seed, f)
        out[f] = channel_llr(symbols[f] + sigma * gaussian(rng, n), sigma)
    return out


def _check_clear_header(header: FrameHeader, params: PipelineParams) -> PipelineParams:
    for name, got, want in [
        ("ldpc_config_id", header.ldpc_config_id, params.ldpc_config_id),
        ("rs_n", header.rs_n, params.rs_n),
        ("rs_k", header.rs_k, params.rs_k),
        ("header_protect", header.header_protect, params.header_protect),
        ("tail_protect", header.tail_protect, params.tail_protect),
    ]:
        if got != want:
            raise PipelineError(
                f"frame header field {name!r} = {got} does not match parameters ({want})"
            )
    return params


def recover(llr_frames: np.ndarray, params: PipelineParams,
            reference: bytes | None = None) -> tuple[bytes, ErrorReport]:
    """LDPC-decode frames, reassemble the stream, RS-decode the regions.

    Raises PipelineError naming the offending field when the recovered
    in-stream header is corrupted beyond use.
    """
    llr_frames = np.asarray(llr_frames, dtype=np.float64)
    if llr_frames.ndim != 2:
        raise PipelineError("llr_frames must have shape (frames, code_length)")
    H, enc = _ldpc_codec(params)
    if llr_frames.shape[1] != enc.n:
        raise PipelineError(
            f"frames are {llr_frames.shape[1]} bits long, code expects {enc.n}"
        )
    decoder = MinSumDecoder(H, params.decoder)
    results = decoder.decode_batch(llr_frames)
    converged = [r.converged for r in results]
    msg_bits = np.concatenate([enc.extract_message(r.bits) for r in results])
    stream = np.packbits(msg_bits[: (len(msg_bits) // 8) * 8]).tobytes()

    header = FrameHeader.unpack(stream)  # raises with the field name
    _check_clear_header(header, params)
    expect_len = params.stream_len(header.payload_len)
    expect_frames = -(-(expect_len * 8) // enc.k)
    if expect_frames != llr_frames.shape[0]:
        raise PipelineError(
            f"frame header field 'payload_len' = {header.payload_len} implies "
            f"{expect_frames} frames, got {llr_frames.shape[0]}"
        )
    stream = stream[:expect_len]

    h, t = params.header_protect, params.tail_protect
    ch, ct = params.coded_region_len(h), params.coded_region_len(t)
    head_coded = stream[HEADER_LEN:HEADER_LEN + ch]
    tail_coded = stream[len(stream) - ct:] if ct else b""
    body = stream[HEADER_LEN + ch:len(stream) - ct] if ct else stream[HEADER_LEN + ch:]

    report = ErrorReport(frames_total=len(results), frame_converged=converged)
    code = params.rs_code()
    if code is not None:
        head, b1, c1, f1 = _rs_decode_region(code, head_coded, h)
        tail, b2, c2, f2 = _rs_decode_region(code, tail_coded, t)
        report.rs_blocks = b1 + b2
        report.rs_corrected_symbols = c1 + c2
        report.rs_failed_blocks = f1 + f2
    else:
        head, tail = head_coded, tail_coded
    out = head + body + tail
    if reference is not None:
        span = min(len(out), len(reference))
        diff = sum(a != b for a, b in zip(out[:span], reference[:span]))
        report.residual_byte_errors = diff + abs(len(out) - len(reference))
    return out, report


# ---------------------------------------------------------------------------
# PNM images and PSNR

@dataclass(frozen=True)
class RawImage:
    width: int
    height: int
    channels: int  # 1 for P5, 3 for P6
    pixels: np.ndarray  # uint8, shape (height, width, channels)

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8).reshape(
            self.height, self.width, self.channels
        )
        object.__setattr__(self, "pixels", px)


def psnr(a: RawImage, b: RawImage) -> float:
    """Peak signal-to-noise ratio in dB, math.inf for identical images."""
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise ValueError(
            f"image shapes differ: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )
    da = a.pixels.astype(np.float64)
    db = b.pixels.astype(np.float64)
    mse = float(np.mean((da - db) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)


def read_pnm(data: bytes) -> RawImage:
    """Parse binary P5 (grayscale) or P6 (RGB) with maxval 255."""
    if len(data) < 2:
        raise ValueError("not a PNM file: too short")
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported PNM magic {magic!r} (binary P5/P6 only)")
    channels = 1 if magic == b"P5" else 3

    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ValueError("truncated PNM header")
        try:
            fields.append(int(data[start:pos]))
        except ValueError:
            raise ValueError(f"bad PNM header token {data[start:pos]!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ValueError(f"bad PNM dimensions {width}x{height}")
    if maxval != 255:
        raise ValueError(f"unsupported maxval {maxval} (8-bit only)")
    pos += 1  # exactly one whitespace byte after maxval
    need = width * height * channels
    raw = data[pos:pos + need]
    if len(raw) != need:
        raise ValueError(f"truncated pixel data: need {need} bytes, have {len(raw)}")
    px = np.frombuffer(raw, dtype=np.uint8).reshape(height, width, channels)
    return RawImage(width, height, channels, px)


def write_pnm(img: RawImage) -> bytes:
    magic = b"P5" if img.channels == 1 else b"P6"
    if img.channels not in (1, 3):
        raise ValueError(f"cannot write {img.channels}-channel image as PNM")
    header = magic + b"\n" + f"{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()
