"""Hierarchical quasi-cyclic LDPC codec toolkit."""

from .matrix import SparseBinaryMatrix, has_four_cycles, regularity
from .alist import to_alist, from_alist, AlistFormatError
from .hqc import (
    HqcConfig,
    PermutedMatrix,
    FourCycleError,
    construct_hqc,
    catalog_config,
    preset_names,
    CATALOG,
)
from .encoder import SystematicEncoder, derive_encoder, syndrome
from .channel import ChannelSpec, sigma_from_ebn0, modulate, transmit, channel_llr
from .decoder import (
    DecoderParams,
    DecodeResult,
    Quantizer,
    MinSumDecoder,
    decode,
    quantize,
    variable_update,
    check_update,
)
from .harness import SweepSpec, StopRule, BerPoint, run_point, run_sweep
from .hwmodel import clocks_per_iteration, throughput, timing_report, TimingReport
from .rs import GaloisField, RsCode, RsDecodeError, rs_encode, rs_decode
from .pipeline import (
    PipelineParams,
    PipelineError,
    FrameHeader,
    ErrorReport,
    RawImage,
    protect,
    recover,
    psnr,
    read_pnm,
    write_pnm,
)

__version__ = "0.1.0"
