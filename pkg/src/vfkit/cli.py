"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 internal
error.
"""

import argparse
import sys
from pathlib import Path

from . import bench as benchmod
from .filters import BENCH_FILTERS, REGISTRY, FilterSpec, UnknownFilterError
from .imagecore import apply_filter
from .metrics import evaluate
from .noise import NoiseConfig, corrupt
from .ppm import PpmError, read_image, write_ppm


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageExit(message)


def _parse_param(text):
    if "=" not in text:
        raise ValueError(f"--param expects key=value, got {text!r}")
    key, raw = text.split("=", 1)
    for conv in (int, float):
        try:
            return key, conv(raw)
        except ValueError:
            continue
    return key, raw


def _params_dict(items):
    return dict(_parse_param(t) for t in (items or []))


def _filter_list(text):
    if text == "all":
        return list(BENCH_FILTERS)
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ValueError("empty filter list")
    return names


def _collect_images(directory):
    root = Path(directory)
    if not root.is_dir():
        raise OSError(f"{directory} is not a directory")
    paths = sorted(str(p) for p in root.iterdir()
                   if p.suffix.lower() in (".ppm", ".png"))
    if not paths:
        raise OSError(f"no .ppm or .png images in {directory}")
    return paths


def _cmd_list(args):
    for name in BENCH_FILTERS:
        print(f"{name}\t{REGISTRY[name].family}")
    return 0


def _cmd_apply(args):
    params = _params_dict(args.param)
    params.setdefault("p", args.p)
    params.setdefault("acos", args.acos)
    img = read_image(args.input)
    out = apply_filter(img, FilterSpec(args.filter, params), args.window)
    write_ppm(args.output, out)
    return 0


def _cmd_corrupt(args):
    img = read_image(args.input)
    cfg = NoiseConfig(model=args.model, phi=args.p, phi1=args.p1,
                      phi2=args.p2, phi3=args.p3, seed=args.seed)
    write_ppm(args.output, corrupt(img, cfg))
    return 0


def _cmd_evaluate(args):
    ref = read_image(args.reference)
    test = read_image(args.test)
    rep = evaluate(ref, test)
    print(f"mae={rep.mae:.6g} mse={rep.mse:.6g} ncd={rep.ncd:.6g}")
    return 0


def _cmd_bench(args):
    cfg = benchmod.BenchConfig(
        images=tuple(_collect_images(args.images)),
        filters=tuple(_filter_list(args.filters)),
        models=tuple(t.strip() for t in args.models.split(",") if t.strip()),
        levels=tuple(float(t) for t in args.levels.split(",") if t.strip()),
        seed=args.seed, window=args.window, p=args.p, acos=args.acos,
        phi1=args.p1, phi2=args.p2, phi3=args.p3,
        timed=args.timed, jobs=args.jobs)
    progress = None
    if not args.quiet:
        progress = lambda line: print(line, file=sys.stderr)  # noqa: E731
    rows, errors = benchmod.run_benchmark(cfg, progress=progress)
    benchmod.write_results_csv(args.out, rows)
    if args.report:
        benchmod.write_report_json(args.report, cfg, rows, errors)
    if errors:
        print(f"{len(errors)} image(s) skipped", file=sys.stderr)
    return 0


def _cmd_rank(args):
    rows = benchmod.read_results_csv(args.infile)
    table = benchmod.aggregate_rankings(rows)
    benchmod.write_rank_csv(args.out, table)
    return 0


def _build_parser():
    parser = _Parser(prog="vfkit",
                     description="Vector filters for impulsive noise removal "
                                 "from color images")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the benchmark filter names")

    p = sub.add_parser("apply", help="run one filter over an image")
    p.add_argument("--filter", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--acos", choices=["approx", "ref"], default="approx")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")

    p = sub.add_parser("corrupt", help="add impulsive noise to an image")
    p.add_argument("--model", choices=["uncorrelated", "correlated"], required=True)
    p.add_argument("--p", type=float, required=True, help="corruption probability")
    p.add_argument("--p1", type=float, default=0.25)
    p.add_argument("--p2", type=float, default=0.25)
    p.add_argument("--p3", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("evaluate", help="compare a test image to a reference")
    p.add_argument("--reference", required=True)
    p.add_argument("--test", required=True)

    p = sub.add_parser("bench", help="corrupt, filter, and measure an image set")
    p.add_argument("--images", required=True, help="directory of .ppm/.png images")
    p.add_argument("--filters", default="all")
    p.add_argument("--models", default="uncorrelated,correlated")
    p.add_argument("--levels", default="0.05,0.10,0.15")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--acos", choices=["approx", "ref"], default="approx")
    p.add_argument("--p1", type=float, default=0.25)
    p.add_argument("--p2", type=float, default=0.25)
    p.add_argument("--p3", type=float, default=0.25)
    p.add_argument("--out", required=True, help="results CSV path")
    p.add_argument("--report", help="optional JSON report path")
    p.add_argument("--timed", action="store_true",
                   help="warmed single-threaded timing runs")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel filter evaluation (untimed runs only)")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("rank", help="aggregate a results CSV into average rankings")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    return parser


_HANDLERS = {
    "list": _cmd_list,
    "apply": _cmd_apply,
    "corrupt": _cmd_corrupt,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
    "rank": _cmd_rank,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as exc:
        print(f"vfkit: error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except (UnknownFilterError, ValueError) as exc:
        if isinstance(exc, PpmError):
            print(f"vfkit: parse error: {exc}", file=sys.stderr)
            return 2
        print(f"vfkit: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"vfkit: i/o error: {exc}", file=sys.stderr)
        return 2
    except benchmod.BenchError as exc:
        print(f"vfkit: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violation
        print(f"vfkit: internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
