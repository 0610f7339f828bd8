"""Command-line interface.

Subcommands: construct, encode, decode, sweep, latency, gain.  Exit codes:
0 success, 1 usage error, 2 no-crossing in `gain`.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import architecture, codec, quantized, sweep as sweep_mod
from .construction import (
    ConstructionParams,
    bhattacharyya_construct,
    parse_spec_text,
    to_spec_text,
)

USAGE_EXIT = 1
NO_CROSSING_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _parse_code(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"--code expects N,K, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_ebn0(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"--ebn0 expects start:stop:step, got {text!r}")
    return float(parts[0]), float(parts[1]), float(parts[2])


def _load_spec(args):
    if getattr(args, "spec_file", None):
        with open(args.spec_file) as fh:
            return parse_spec_text(fh.read())
    if getattr(args, "code", None):
        n, k = _parse_code(args.code)
        z0 = getattr(args, "design_z0", 0.5)
        return bhattacharyya_construct(n, k, ConstructionParams(z0))
    raise _UsageError("one of --code or --spec-file is required")


def _write_out(text, out):
    if out in (None, "stdout", "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _parse_bits(text, expected):
    bits = [c for c in text if c in "01"]
    if len(bits) != expected:
        raise _UsageError(f"expected {expected} bits, got {len(bits)}")
    return np.array([int(c) for c in bits], dtype=np.uint8)


def _bits_str(bits):
    return "".join(str(int(b)) for b in bits)


def _cmd_construct(args):
    spec = _load_spec(args)
    _write_out(to_spec_text(spec), args.out)
    return 0


def _cmd_encode(args):
    spec = _load_spec(args)
    info = _parse_bits(args.bits, spec.info_len)
    codeword = codec.encode_systematic(info, spec)
    _write_out(_bits_str(codeword) + "\n", args.out)
    return 0


def _cmd_decode(args):
    spec = _load_spec(args)
    if args.decoder == "hard":
        bits = _parse_bits(args.values, spec.block_len)
        result = codec.hard_decision_decode(bits, spec)
    else:
        tokens = args.values.replace(",", " ").split()
        if len(tokens) != spec.block_len:
            raise _UsageError(f"expected {spec.block_len} LLRs, got {len(tokens)}")
        llrs = np.array([float(t) for t in tokens])
        if args.decoder == "fixed":
            result = quantized.sc_decode_fixed(
                llrs, spec, quantized.QuantSpec(args.quant_bits, args.frac_bits)
            )
        else:
            mode = "exact" if args.decoder == "soft_exact" else "minsum"
            result = codec.sc_decode(llrs, spec, f_mode=mode)
    out = (
        f"info={_bits_str(result.info_bits)}\n"
        f"u_hat={_bits_str(result.u_hat)}\n"
        f"x_hat={_bits_str(result.x_hat)}\n"
    )
    _write_out(out, args.out)
    return 0


def _cmd_sweep(args):
    code = None
    if args.spec_file:
        with open(args.spec_file) as fh:
            code = parse_spec_text(fh.read())
    elif args.code:
        pair = _parse_code(args.code)
        if args.decoder == "rs15_11":
            code = pair
        else:
            code = bhattacharyya_construct(
                pair[0], pair[1], ConstructionParams(args.design_z0)
            )
    start, stop, step = _parse_ebn0(args.ebn0)
    try:
        config = sweep_mod.SweepConfig(
            code=code,
            decoder=args.decoder,
            ebn0_start=start,
            ebn0_stop=stop,
            ebn0_step=step,
            max_frames=args.max_frames,
            min_frame_errors=args.min_frame_errors,
            master_seed=args.seed,
            quant_bits=args.quant_bits,
            frac_bits=args.frac_bits,
        )
        points = sweep_mod.run_sweep(config, workers=args.workers)
        metadata = {
            "code": config.code_label(),
            "decoder": config.decoder_label(),
            "seed": config.master_seed,
        }
    except ValueError as exc:
        raise _UsageError(str(exc))
    _write_out(sweep_mod.emit_csv(points, metadata), args.out)
    return 0


def _cmd_latency(args):
    n, k = _parse_code(args.code)
    spec = bhattacharyya_construct(n, k)
    if args.trace:
        gen = np.random.Generator(np.random.Philox(key=[args.seed, 0]))
        llrs = gen.normal(0.0, 2.0, size=spec.block_len)
        trace = architecture.build_schedule(spec, args.arch, llrs)
        _write_out(architecture.format_trace(trace), args.out)
        return 0
    lines = [f"architecture  schedule(first pair)   clocks for ({n},{k})"]
    clocks = {}
    for arch in architecture.ARCH_KINDS:
        clocks[arch] = architecture.latency_clocks(n, arch)
        label = architecture.SCHEDULE_LABELS[arch]
        lines.append(f"{arch:<13} {label:<22} {clocks[arch]} clocks")
    lines.append(
        "speedup of proposed: "
        f"{clocks['conventional'] / clocks['proposed']:g}x vs conventional, "
        f"{clocks['two_bit_sc'] / clocks['proposed']:g}x vs 2b-SC"
    )
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_gain(args):
    with open(args.curve_a) as fh:
        curve_a, _ = sweep_mod.parse_csv(fh.read())
    with open(args.curve_b) as fh:
        curve_b, _ = sweep_mod.parse_csv(fh.read())
    try:
        gain = sweep_mod.compare_gain(curve_a, curve_b, args.target_ber)
    except sweep_mod.NoCrossingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NO_CROSSING_EXIT
    _write_out(f"gain_db={gain:.4f}\n", args.out)
    return 0


def _add_code_args(parser, with_z0=True):
    parser.add_argument("--code", help="code parameters as N,K")
    parser.add_argument("--spec-file", help="path to a saved code spec")
    if with_z0:
        parser.add_argument(
            "--design-z0",
            type=float,
            default=0.5,
            help="erasure-proxy design parameter for construction (default 0.5)",
        )


def build_parser():
    parser = _Parser(prog="polarfec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code spec and print/save it")
    _add_code_args(p)
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("encode", help="systematically encode K info bits")
    _add_code_args(p)
    p.add_argument("bits", help="K information bits, e.g. 10110111011")
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode one frame of LLRs or hard bits")
    _add_code_args(p)
    p.add_argument(
        "--decoder",
        default="soft_minsum",
        choices=["soft_exact", "soft_minsum", "hard", "fixed"],
    )
    p.add_argument("--quant-bits", type=int, default=5)
    p.add_argument("--frac-bits", type=int, default=1)
    p.add_argument(
        "values",
        help="N comma/space-separated LLRs (prefix with -- when the first is"
        " negative), or N bits for hard",
    )
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("sweep", help="Monte-Carlo BER/FER sweep, CSV output")
    _add_code_args(p)
    p.add_argument("--decoder", default="soft_minsum", choices=list(sweep_mod.DECODERS))
    p.add_argument("--quant-bits", type=int, default=5)
    p.add_argument("--frac-bits", type=int, default=1)
    p.add_argument("--ebn0", default="0:8:1", help="start:stop:step in dB")
    p.add_argument("--max-frames", type=int, default=100_000)
    p.add_argument("--min-frame-errors", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("latency", help="decode-latency table for the three designs")
    p.add_argument("--code", default="16,11")
    p.add_argument("--arch", default="proposed", choices=list(architecture.ARCH_KINDS))
    p.add_argument("--trace", action="store_true", help="dump one schedule trace")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_latency)

    p = sub.add_parser("gain", help="coding-gain difference between two CSV curves")
    p.add_argument("curve_a")
    p.add_argument("curve_b")
    p.add_argument("--target-ber", type=float, default=1e-4)
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=_cmd_gain)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
