"""Command-line entry point.

Subcommands: construct (alist out), check (regularity/girth report), sweep
(BER CSV, optional figures), hwmodel (clock/throughput table), protect and
recover (file pipeline), psnr (two PNM files).  Exit codes: 0 success,
1 validation error, 2 runtime failure.  All randomness is governed by
explicit --seed flags, so repeated invocations are byte-identical except
for the wall_seconds column of sweep CSVs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    from .hqc import preset_names

    parser = _Parser(prog="hqcldpc", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code_args(p, seed_default=1):
        p.add_argument("--preset", choices=None, metavar="NAME",
                       help=f"catalog preset ({', '.join(preset_names())})")
        p.add_argument("--rate", help="code rate as a fraction, e.g. 1/2")
        p.add_argument("--core-cols", type=int, default=6)
        p.add_argument("--n", dest="n_factor", type=int, help="level-2 circulant size")
        p.add_argument("--r", dest="r_factor", type=int, help="permuted matrix size")
        p.add_argument("--p", dest="p_factor", type=int, help="base matrix size")
        p.add_argument("--seed", type=int, default=seed_default)

    p = sub.add_parser("construct", help="build a matrix and emit alist text")
    add_code_args(p)
    p.add_argument("-o", "--output", help="alist path (default stdout)")

    p = sub.add_parser("check", help="report shape, regularity and girth")
    add_code_args(p)
    p.add_argument("--alist", help="read the matrix from an alist file instead")

    p = sub.add_parser("sweep", help="Monte-Carlo BER sweep, CSV out")
    add_code_args(p, seed_default=1)
    p.add_argument("--ebn0", default="2.0,2.5,3.0,3.5,4.0",
                   help="comma-separated Eb/N0 dB points, increasing")
    p.add_argument("--mode", choices=["allzero", "encoded"], default="allzero")
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=10**6)
    p.add_argument("--max-iters", type=int, default=10)
    p.add_argument("--alpha", default="3/4", help="min-sum normalization factor")
    p.add_argument("--quant", metavar="BITS,STEP",
                   help="fixed-point decoding, e.g. 6,0.25 (default float)")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", required=True, help="output CSV path")
    p.add_argument("--plot", action="store_true",
                   help="also render BER and iteration figures next to the CSV")

    p = sub.add_parser("hwmodel", help="decoder clock/throughput model")
    p.add_argument("--len", dest="code_length", type=int, required=True)
    p.add_argument("--rate", default="1/2")
    p.add_argument("--p", dest="parallel", required=True,
                   help="parallelism factor, or comma-separated list for a table")
    p.add_argument("--mhz", type=float, help="clock in MHz (table mode: measured defaults)")
    p.add_argument("--iters", type=float, default=7.5, help="average iterations")
    p.add_argument("--strict", action="store_true",
                   help="compute the check phase from 1-rate and warn on divergence")

    p = sub.add_parser("protect", help="RS+LDPC protect a file into a container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--preset", default="wimax-2304")
    p.add_argument("--seed", type=int, default=1, help="LDPC construction seed")
    p.add_argument("--rs", default="255,223", metavar="N,K", help="RS code; 0,0 disables")
    p.add_argument("--header-bytes", type=int, default=1024)
    p.add_argument("--tail-bytes", type=int, default=64)

    p = sub.add_parser("recover", help="decode a container back into the file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--preset", default="wimax-2304")
    p.add_argument("--seed", type=int, default=1, help="LDPC construction seed")
    p.add_argument("--rs", default="255,223", metavar="N,K")
    p.add_argument("--header-bytes", type=int, default=1024)
    p.add_argument("--tail-bytes", type=int, default=64)
    p.add_argument("--ebn0", type=float, help="simulate BPSK/AWGN at this Eb/N0 (dB)")
    p.add_argument("--noise-seed", type=int, default=0)
    p.add_argument("--reference", help="original file for residual error reporting")

    p = sub.add_parser("psnr", help="PSNR between two PNM images")
    p.add_argument("image_a")
    p.add_argument("image_b")
    return parser


def _config_from_args(args):
    from .hqc import HqcConfig, catalog_config

    if args.preset:
        return catalog_config(args.preset, seed=args.seed)
    needed = [args.rate, args.n_factor, args.r_factor, args.p_factor]
    if any(v is None for v in needed):
        raise _UsageError("give --preset, or all of --rate --n --r --p")
    return HqcConfig.for_rate(
        Fraction(args.rate), args.core_cols, args.n_factor, args.r_factor,
        args.p_factor, args.seed,
    )


def _cmd_construct(args) -> int:
    from .alist import to_alist
    from .hqc import construct_hqc

    H = construct_hqc(_config_from_args(args))
    text = to_alist(H)
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check(args) -> int:
    from .alist import from_alist
    from .hqc import construct_hqc
    from .matrix import has_four_cycles, regularity

    if args.alist:
        with open(args.alist, "r", encoding="ascii") as fh:
            H = from_alist(fh.read())
    else:
        H = construct_hqc(_config_from_args(args))
    col_w, row_w = regularity(H)
    print(f"size: {H.rows} x {H.cols} ({H.num_entries} ones)")
    print(f"column weights: {sorted(col_w)}")
    print(f"row weights: {sorted(row_w)}")
    print(f"four-cycle free: {'yes' if not has_four_cycles(H) else 'no'}")
    return 0


def _cmd_sweep(args) -> int:
    from .decoder import DecoderParams, Quantizer
    from .harness import StopRule, SweepSpec, format_csv, run_sweep

    quant = None
    if args.quant:
        bits_s, step_s = args.quant.split(",")
        quant = Quantizer(int(bits_s), float(step_s))
    dec = DecoderParams(max_iterations=args.max_iters,
                        scale_alpha=float(Fraction(args.alpha)),
                        quantizer=quant)
    points = tuple(float(x) for x in args.ebn0.split(","))
    spec = SweepSpec(
        code=_config_from_args(args),
        decoder=dec,
        ebn0_points=points,
        stop=StopRule(args.min_errors, args.max_frames),
        mode=args.mode,
        master_seed=args.master_seed,
        workers=args.workers,
    )
    results = run_sweep(spec, csv_path=args.csv)
    sys.stdout.write(format_csv(results))
    if args.plot:
        from .plotting import plot_sweep

        for path in plot_sweep(results, args.csv):
            print(f"wrote {path}")
    return 0


def _cmd_hwmodel(args) -> int:
    from .hwmodel import format_report_table, timing_report

    rate = Fraction(args.rate)
    p_values = [int(x) for x in str(args.parallel).split(",")]
    if len(p_values) == 1 and args.mhz is not None:
        rep = timing_report(args.code_length, rate, p_values[0], args.mhz * 1e6,
                            args.iters, strict_check_nodes=args.strict)
        print(f"J = {rep.j_cycles} clocks (variable phase)")
        print(f"K = {rep.k_cycles} clocks (check phase)")
        print(f"L = {rep.latency} clocks (pipeline latency)")
        print(f"N_it = {rep.n_it} clocks per iteration")
        print(f"throughput = {rep.throughput_bps / 1e6:.2f} Mbps "
              f"({args.iters} iterations at {args.mhz:g} MHz)")
    else:
        sys.stdout.write(format_report_table(args.code_length, rate, p_values,
                                             clock_mhz=args.mhz, avg_iterations=args.iters))
    return 0


def _pipeline_params(args):
    from .hqc import CATALOG, catalog_entry
    from .pipeline import PipelineParams

    entry = catalog_entry(args.preset)
    config_id = CATALOG.index(entry)
    rs_n, rs_k = (int(x) for x in args.rs.split(","))
    return PipelineParams(
        ldpc_config_id=config_id,
        ldpc_seed=args.seed,
        rs_n=rs_n,
        rs_k=rs_k,
        header_protect=args.header_bytes,
        tail_protect=args.tail_bytes,
    )


def _cmd_protect(args) -> int:
    from .pipeline import protect

    with open(args.input, "rb") as fh:
        data = fh.read()
    container = protect(data, _pipeline_params(args))
    with open(args.output, "wb") as fh:
        fh.write(container)
    print(f"wrote {args.output}: {len(container)} bytes for {len(data)} payload bytes")
    return 0


def _cmd_recover(args) -> int:
    from .pipeline import llr_frames_from_container, recover

    with open(args.input, "rb") as fh:
        container = fh.read()
    params = _pipeline_params(args)
    reference = None
    if args.reference:
        with open(args.reference, "rb") as fh:
            reference = fh.read()
    llr = llr_frames_from_container(container, params, ebn0_db=args.ebn0,
                                    noise_seed=args.noise_seed)
    data, report = recover(llr, params, reference=reference)
    with open(args.output, "wb") as fh:
        fh.write(data)
    print(f"frames: {report.frames_converged}/{report.frames_total} converged")
    if report.rs_blocks:
        print(f"RS: {report.rs_corrected_symbols} symbols corrected, "
              f"{report.rs_failed_blocks}/{report.rs_blocks} blocks failed")
    if report.residual_byte_errors is not None:
        print(f"residual byte errors vs reference: {report.residual_byte_errors}")
    return 0


def _cmd_psnr(args) -> int:
    from .pipeline import psnr, read_pnm

    with open(args.image_a, "rb") as fh:
        a = read_pnm(fh.read())
    with open(args.image_b, "rb") as fh:
        b = read_pnm(fh.read())
    value = psnr(a, b)
    print("inf" if value == float("inf") else f"{value:.6f}")
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "check": _cmd_check,
    "sweep": _cmd_sweep,
    "hwmodel": _cmd_hwmodel,
    "protect": _cmd_protect,
    "recover": _cmd_recover,
    "psnr": _cmd_psnr,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # runtime failure
        print(f"failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
