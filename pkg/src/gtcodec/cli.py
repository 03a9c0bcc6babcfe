"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data/format error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .audio_io import Signal, read_wav, write_wav
from .bench import GridConfig, emit_csv, run_grid
from .codec import CodecConfig, compress_signal, decode_stream, decompress_signal, encode_stream
from .errors import GTCodecError
from .metrics import mse, psnr
from .transforms import KIND_NAMES, TransformKind, basis_for

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_DATA = 0, 1, 2, 3
KIND_CHOICES = [k.lower() for k in KIND_NAMES]

log = logging.getLogger("gtcodec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _kind(args) -> TransformKind:
    try:
        return TransformKind(args.kind, args.w2 if args.kind == "gt1" else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_basis(args):
    B = basis_for(_kind(args), args.n).matrix
    out = args.out if args.out else sys.stdout
    np.savetxt(out, B, delimiter=",", fmt="%.17g")


def cmd_compress(args):
    sig = read_wav(args.input)
    try:
        config = CodecConfig(_kind(args), args.frame, args.cr)
    except GTCodecError as exc:
        raise UsageError(str(exc)) from exc
    data = encode_stream(compress_signal(sig, config))
    Path(args.out).write_bytes(data)
    log.info("wrote %d bytes (%d samples, k=%d per frame)", len(data), len(sig), config.k)


def cmd_decompress(args):
    stream = decode_stream(Path(args.input).read_bytes())
    if stream.sample_rate <= 0:
        raise UsageError("stream carries no sample rate")
    x = np.clip(decompress_signal(stream), -1.0, 1.0)
    write_wav(args.out, Signal(x, stream.sample_rate))


def cmd_metrics(args):
    ref = read_wav(args.ref)
    test = read_wav(args.test)
    print(f"psnr_db={psnr(ref, test):.4f}")
    print(f"mse={mse(ref, test):.6e}")


def cmd_bench(args):
    kw = {}
    if args.kinds:
        kw["kinds"] = tuple(k.upper() for k in args.kinds)
    if args.frames:
        kw["frame_sizes"] = tuple(args.frames)
    if args.crs:
        kw["crs"] = tuple(args.crs)
    try:
        config = GridConfig.music(**kw) if args.music else GridConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = run_grid(args.corpus, config)
    emit_csv(result.all_rows(), args.out)
    log.info("%d rows (+%d means) -> %s", len(result.rows), len(result.means), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gtcodec", description="Graph-based transform audio coding toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    # -v is accepted after the subcommand too; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def kind_args(sp, required=True):
        sp.add_argument("--kind", choices=KIND_CHOICES, required=required, type=str.lower)
        sp.add_argument("--w2", type=float, default=0.1, help="GT1 second-neighbour weight")

    sp = sub.add_parser("basis", parents=[common], help="emit a basis matrix as CSV (columns are basis vectors)")
    kind_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("compress", parents=[common], help="WAV -> GTAC stream")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    kind_args(sp)
    sp.add_argument("--frame", type=int, required=True)
    sp.add_argument("--cr", type=int, required=True)
    sp.set_defaults(func=cmd_compress)

    sp = sub.add_parser("decompress", parents=[common], help="GTAC stream -> PCM16 WAV")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_decompress)

    sp = sub.add_parser("metrics", parents=[common], help="PSNR and MSE between two WAV files")
    sp.add_argument("--ref", required=True)
    sp.add_argument("--test", required=True)
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("bench", parents=[common], help="run the transform x frame x CR grid over a corpus")
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--music", action="store_true", help="GT1 second-neighbour weight 0.3")
    sp.add_argument("--kinds", nargs="+", choices=KIND_CHOICES, type=str.lower)
    sp.add_argument("--frames", nargs="+", type=int)
    sp.add_argument("--crs", nargs="+", type=int)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version, usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except UsageError as exc:
        print(f"gtcodec: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gtcodec: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GTCodecError, ValueError) as exc:
        print(f"gtcodec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
