"""Command-line front end: ``clustercodes <verb> ...``.

Exit codes: 0 ok, 1 usage or file format, 2 no code found, 3 shape not
supported, 4 undecodable word, 5 a verification check failed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import codec, oracle
from .coloring import ColoringSet, certify, check_p1, check_p2, check_p3, default_window
from .components import (
    burst_corrector,
    search_limited_weight,
    search_optimum_burst_code,
)
from .errors import (
    BudgetExceeded,
    FormatError,
    NoComponentCode,
    NotFoundInRange,
    ShapeUnsupported,
    Undecodable,
)
from .lee import bounding_box_check, transform_injective
from .report import CheckReport
from .shapes import Cluster, ShapeSpec

EXIT_USAGE = 1
EXIT_NOT_FOUND = 2
EXIT_SHAPE = 3
EXIT_UNDECODABLE = 4
EXIT_CHECK = 5

DEFAULT_SEED = 20240601
JOBS_ENV = "CLUSTER_CODES_JOBS"


class UsageError(Exception):
    pass


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --dims {text!r}; expected e.g. 10,10") from None
    if not dims or any(n < 1 for n in dims):
        raise UsageError("--dims entries must be positive")
    return dims


def _shape(text: str, D: int) -> ShapeSpec:
    try:
        return ShapeSpec.parse(text, D)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positions(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in item.split(",")) for item in text.split(";") if item.strip()]
    except ValueError:
        raise UsageError(f"bad --positions {text!r}; expected e.g. 1,2;1,3") from None


def _write(path, text: str) -> None:
    Path(path).write_text(text)


# ---------------------------------------------------------------------------
# verbs


def cmd_search_code(args) -> int:
    if args.b < 1:
        raise UsageError("--b must be positive")
    m_range = None
    if args.m_min is not None or args.m_max is not None:
        lo = args.m_min if args.m_min is not None else 1
        hi = args.m_max if args.m_max is not None else 20
        if lo > hi:
            raise UsageError("--m-min exceeds --m-max")
        m_range = (lo, hi)
    jobs = _jobs(args)
    if args.weight_limit is not None:
        if not 1 <= args.weight_limit <= args.b:
            raise UsageError("--weight-limit must lie in 1..b")
        code = search_limited_weight(args.b, args.weight_limit, args.length, m_range, jobs)
        lines = [code.to_spec()]
    else:
        try:
            spec = search_optimum_burst_code(args.b, m_range, jobs=jobs)
        except ValueError as exc:
            raise UsageError(f"{exc} (the all-ones e must be square-free, which needs odd b or b=2)") from None
        code = burst_corrector(spec)
        lines = [f"# g={spec.g.to_string()} n={spec.n} r={spec.r}", code.to_spec()]
    _write(args.out, "\n".join(lines) + "\n")
    print(code.describe())
    return 0


def cmd_construct(args) -> int:
    dims = _dims(args.dims)
    shape = _shape(args.shape, len(dims))
    if args.colorings_out:
        cs, route = codec.choose_colorings(dims, shape, args.route)
        cs = certify(cs)
        _write(args.colorings_out, "\n".join(cs.to_lines()) + "\n")
        print(f"colorings: {cs.family} route={route} moduli={' '.join(map(str, cs.moduli))}")
        if args.colorings_only:
            return 0
    elif args.colorings_only:
        raise UsageError("--colorings-only needs --colorings-out")
    if not args.out:
        raise UsageError("construct needs --out")
    a = codec.assemble(dims, shape, args.route, jobs=_jobs(args))
    codec.save_assembly(a, args.out)
    print(f"route: {a.route}")
    for c in a.components:
        print(f"component: {c.describe()}")
    for line in codec.bounds_report(a).lines():
        print(line)
    return 0


def cmd_encode(args) -> int:
    a = codec.load_assembly(args.assembly)
    if args.info:
        info = codec.read_array(args.info).ravel()
        if info.size != a.k:
            raise FormatError(f"info file has {info.size} bits, the code needs k={a.k}")
    else:
        info = np.random.default_rng(args.seed).integers(0, 2, a.k, dtype=np.uint8)
    codec.write_array(codec.encode(a, info), args.out)
    print(f"encoded k={a.k} into N={a.N}")
    return 0


def cmd_inject(args) -> int:
    a = codec.load_assembly(args.assembly)
    word = codec.read_array(args.input)
    if word.shape != a.dims:
        raise FormatError(f"array dims {word.shape} differ from the code's {a.dims}")
    rng = np.random.default_rng(args.seed)
    if args.positions:
        cluster = Cluster.of(_positions(args.positions), a.shape)
        if any(len(p) != a.D or not all(0 <= x < n for x, n in zip(p, a.dims)) for p in cluster.positions):
            raise UsageError("--positions outside the array")
        if not cluster.fits() and not args.force:
            raise UsageError("the given positions do not fit the shape; pass --force to inject anyway")
    elif args.force:
        cluster = oracle.violating_cluster(a.shape, a.dims, rng)
    else:
        cluster = oracle.random_cluster(a.shape, a.dims, rng)
    out = word.copy()
    for p in cluster.positions:
        out[p] ^= 1
    codec.write_array(out, args.out)
    print(f"injected: {cluster.to_string()}")
    return 0


def cmd_decode(args) -> int:
    a = codec.load_assembly(args.assembly)
    word = codec.read_array(args.input)
    if word.shape != a.dims:
        raise FormatError(f"array dims {word.shape} differ from the code's {a.dims}")
    try:
        fixed, cluster = codec.decode(a, word)
    except Undecodable as exc:
        report = f"undecodable: {exc}"
        if args.report:
            _write(args.report, report + "\n")
        print(report)
        return EXIT_UNDECODABLE
    codec.write_array(fixed, args.out)
    report = "no error" if cluster is None else f"corrected: {cluster.to_string()}"
    if args.report:
        _write(args.report, report + "\n")
    print(report)
    return 0


def _verify_assembly(a: codec.CodeAssembly, exhaustive: bool, seed: int) -> list:
    reps = []
    for s, c in enumerate(a.components):
        cert = c.certificate
        reps.append(CheckReport(f"component{s + 1}-certificate", c.verify_certificate(), cert.cases if cert else 0))
    b = codec.bounds_report(a)
    reps.append(CheckReport("reiger-floor", b.reiger_ok, 1))
    reps.append(CheckReport("excess-floor", b.excess_ok, 1))
    if exhaustive:
        clusters = list(oracle.enumerate_clusters(a.shape, a.dims))
    else:
        rng = np.random.default_rng(seed)
        clusters = list({oracle.random_cluster(a.shape, a.dims, rng) for _ in range(200)})
        clusters.sort(key=lambda c: c.sorted())
    reps.append(oracle.verify_distinct_syndromes(a, clusters))
    reps.append(oracle.verify_roundtrip(a, clusters, seed))
    reps.append(oracle.verify_decoder_equivalence(a, clusters))
    return reps


def _verify_colorings(cs: ColoringSet) -> list:
    window = default_window(cs)
    p1, p2, p3 = check_p1(cs, window), check_p2(cs, window), check_p3(cs, window)
    reps = [p1, p2, p3]
    print(f"moduli {' '.join(map(str, cs.moduli))}")
    if not p3.passed:
        # colorings backed by a full corrector do not need p3
        flagged = list(cs.needs_corrector[1:])
        covered = all(ok or flag for ok, flag in zip(p3.detail["per_s"], flagged))
        reps.append(CheckReport("p3-on-locators", covered, p3.cases))
    return reps


def cmd_verify(args) -> int:
    chosen = sum(x is not None for x in (args.assembly, args.lee_transform, args.colorings))
    if chosen != 1:
        raise UsageError("verify needs exactly one of --assembly, --lee-transform, --colorings")
    if args.assembly:
        reps = _verify_assembly(codec.load_assembly(args.assembly), args.exhaustive, args.seed)
    elif args.lee_transform:
        D, R = args.lee_transform
        if D < 2 or R < 0:
            raise UsageError("--lee-transform needs D >= 2 and R >= 0")
        box = bounding_box_check(D, R, args.window)
        reps = [box, transform_injective(D, args.window)]
        print("extents " + "x".join(map(str, box.detail["max_extent"])))
    else:
        try:
            lines = Path(args.colorings).read_text().splitlines()
            cs = ColoringSet.from_lines(lines)
        except (ValueError, KeyError) as exc:
            raise FormatError(f"bad coloring file: {exc}") from None
        reps = _verify_colorings(cs)
        for rep in reps:
            print(rep.line())
        p1, p2, p3 = reps[:3]
        return 0 if p1 and p2 and (p3 or reps[-1]) else EXIT_CHECK
    for rep in reps:
        print(rep.line())
    return 0 if all(reps) else EXIT_CHECK


def cmd_bounds(args) -> int:
    a = codec.load_assembly(args.assembly)
    for line in codec.bounds_report(a).lines():
        print(line)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustercodes", description="Multidimensional cluster-error-correcting codes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, seed=False):
        p.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("search-code", help="search a certified burst-correcting component code")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--weight-limit", type=int, default=None)
    p.add_argument("--length", type=int, default=63, help="code length for weight-limited searches")
    p.add_argument("--m-min", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_search_code)

    p = sub.add_parser("construct", help="build a code for an array and cluster shape")
    p.add_argument("--dims", required=True)
    p.add_argument("--shape", required=True, help="box:3x3 | lee:R | arb:b | box_wl:3x3/t | lee_wl:R/t")
    p.add_argument("--out")
    p.add_argument("--route", choices=["auto", "transform", "even"], default="auto")
    p.add_argument("--colorings-out", default=None)
    p.add_argument("--colorings-only", action="store_true")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="encode information bits into an array")
    p.add_argument("--assembly", required=True)
    p.add_argument("--info", default=None, help="array file with k bits (random bits if omitted)")
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("inject", help="flip the bits of one cluster")
    p.add_argument("--assembly", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--positions", default=None, help="e.g. 1,2;1,3")
    p.add_argument("--force", action="store_true", help="allow a cluster outside the shape")
    common(p, seed=True)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("decode", help="correct one cluster")
    p.add_argument("--assembly", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    common(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--assembly", default=None)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--lee-transform", nargs=2, type=int, metavar=("D", "R"), default=None)
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--colorings", default=None)
    common(p, seed=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="print the redundancy report")
    p.add_argument("--assembly", required=True)
    common(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotFoundInRange, NoComponentCode) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (ShapeUnsupported, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except Undecodable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDECODABLE


if __name__ == "__main__":
    sys.exit(main())
