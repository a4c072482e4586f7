"""Command-line front end.

Exit codes:

    0   success
    1   unexpected internal error
    2   usage error (bad flags or arguments)
    3   input file missing or unreadable
    4   output path not writable
    5   malformed graymap
    6   graymap depth other than 8 bits
    7   corrupt share container (bad magic, truncated, bad index, ...)
    8   unsupported container version or scheme
    9   duplicate share index
    10  share/image dimension mismatch
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analyzer, container, scheme
from .errors import (
    DepthError,
    DomainError,
    DuplicateShareError,
    ImageFormatError,
    ShapeError,
    ShareFormatError,
    UnsupportedSchemeError,
    UnsupportedVersionError,
)
from .rng import RandomStream, check_seed

log = logging.getLogger("grayvss")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_OUTPUT = 4
EXIT_IMAGE_FORMAT = 5
EXIT_DEPTH = 6
EXIT_CONTAINER = 7
EXIT_UNSUPPORTED = 8
EXIT_DUPLICATE = 9
EXIT_SHAPE = 10


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _exit_code(exc: Exception) -> int:
    # Subclasses first.
    for cls, code in (
        (DepthError, EXIT_DEPTH),
        (ImageFormatError, EXIT_IMAGE_FORMAT),
        (UnsupportedVersionError, EXIT_UNSUPPORTED),
        (UnsupportedSchemeError, EXIT_UNSUPPORTED),
        (ShareFormatError, EXIT_CONTAINER),
        (DuplicateShareError, EXIT_DUPLICATE),
        (ShapeError, EXIT_SHAPE),
        (DomainError, EXIT_USAGE),
    ):
        if isinstance(exc, cls):
            return code
    return EXIT_INTERNAL


def _read(fn, path):
    try:
        return fn(path)
    except OSError as e:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {e.strerror or e}") from e
    except (ImageFormatError, ShareFormatError) as e:
        raise CliError(_exit_code(e), f"{path}: {e}") from e


def _write(fn, *args):
    try:
        fn(*args)
    except OSError as e:
        raise CliError(EXIT_OUTPUT, f"cannot write {args[-1]}: {e.strerror or e}") from e


def _out_dir(path: str) -> Path:
    d = Path(path)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise CliError(EXIT_OUTPUT, f"cannot create directory {d}: {e.strerror or e}") from e
    return d


def _seed(text: str) -> int:
    try:
        return check_seed(int(text, 0))
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def cmd_split(args) -> int:
    secret = _read(container.read_gray_image, args.input)
    out_dir = _out_dir(args.out_dir)
    rng = RandomStream(args.seed)
    if args.seed is None:
        log.info("seed: %d", rng.seed)
    shares = scheme.encode_image(secret, args.dist, rng)
    for share in shares:
        path = out_dir / f"share{share.index}.vss3"
        _write(container.write_share, share, path)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    sx = _read(container.read_share, args.share_a)
    sy = _read(container.read_share, args.share_b)
    img = scheme.reconstruct_image(sx, sy)
    _write(container.write_gray_image, img, args.out)
    print(f"wrote {args.out} ({img.width}x{img.height}) from shares {sx.index} and {sy.index}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    share = _read(container.read_share, args.share)
    print(f"magic: {container.MAGIC.decode()}")
    print(f"version: {container.VERSION}")
    print(f"scheme_id: {container.SCHEME_ID}")
    print(f"share_index: {share.index}")
    print(f"dist: {share.dist.name.lower()}")
    print(f"width: {share.width}")
    print(f"height: {share.height}")
    print(f"payload_bytes: {container.payload_size(share.width, share.height)}")
    if args.out_dir:
        out_dir = _out_dir(args.out_dir)
        for half in scheme.Half:
            path = out_dir / f"share{share.index}_{half.value}.pbm"
            _write(container.export_half_bitmap, share, half, path)
            print(f"wrote {path}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.montecarlo is not None:
        if args.secret or args.shares:
            raise CliError(EXIT_USAGE, "--montecarlo cannot be combined with --secret/--shares")
        reports = [analyzer.measure_leakage(args.dist, args.montecarlo, RandomStream(args.seed))]
    else:
        if not args.secret or not args.shares or len(args.shares) != 3:
            raise CliError(EXIT_USAGE, "file mode needs --secret <f> and --shares <s1> <s2> <s3>")
        secret = _read(container.read_gray_image, args.secret)
        shares = [_read(container.read_share, p) for p in args.shares]
        if len({s.index for s in shares}) != 3:
            raise CliError(EXIT_DUPLICATE, f"expected shares 1, 2 and 3, got {sorted(s.index for s in shares)}")
        reports = [analyzer.verify_exactness(secret, shares), analyzer.measure_expansion(shares[0])]
    if args.json:
        print(analyzer.reports_to_json(*reports))
    else:
        print("\n".join(r.to_text() for r in reports))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grayvss", description="(2,3) visual secret sharing for 8-bit grayscale images")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dist_kw = dict(type=scheme.PairDistribution.parse, default=scheme.PairDistribution.UNIFORM3,
                   metavar="uniform3|balanced2", help="pair distribution for secret 1-bits (default uniform3)")

    p = sub.add_parser("split", help="split a graymap into three share files")
    p.add_argument("input", help="secret image (P2/P5 graymap, maxval 255)")
    p.add_argument("--out-dir", required=True, help="directory for share1.vss3 .. share3.vss3")
    p.add_argument("--seed", type=_seed, help="unsigned 64-bit seed (default: fresh entropy)")
    p.add_argument("--dist", **dist_kw)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("reconstruct", help="rebuild the secret from two shares")
    p.add_argument("share_a")
    p.add_argument("share_b")
    p.add_argument("--out", required=True, help="output graymap (P5)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("inspect", help="print a share header, optionally export its half planes")
    p.add_argument("share")
    p.add_argument("--out-dir", help="write share<i>_A.pbm and share<i>_B.pbm here")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("analyze", help="exactness/expansion of real shares, or Monte Carlo leakage")
    p.add_argument("--secret")
    p.add_argument("--shares", nargs="+")
    p.add_argument("--montecarlo", type=_positive, metavar="N")
    p.add_argument("--dist", **dist_kw)
    p.add_argument("--seed", type=_seed, help="seed for --montecarlo")
    p.add_argument("--json", action="store_true", help="emit JSON instead of key: value lines")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s")
        return args.func(args)
    except CliError as e:
        print(f"grayvss: error: {e}", file=sys.stderr)
        return e.code
    except (DomainError, ShapeError, ImageFormatError, ShareFormatError) as e:
        print(f"grayvss: error: {e}", file=sys.stderr)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
