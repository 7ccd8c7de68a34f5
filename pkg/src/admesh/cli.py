"""Command-line front end.

Subcommands::

    admesh gallery   [NAME] [--out FILE]
    admesh mesh      --domain D --n N [--m 4] [--kind zeros] [--out FILE] [--format csv]
    admesh extract   --domain D --n N --families afp,leja,pleja [--out DIR]
    admesh lebesgue  --domain D --degrees 1:50 --families afp,leja,pleja,ls [--eval-m M']
    admesh reproduce [--out DIR] [--degrees 1:50] [--m 4]

``--domain`` takes a gallery name or the path of a boundary document.
Exit status: 0 success, 1 runtime/numerical failure, 2 usage error.
The reproduce worker pool size comes from ``--workers`` or ``ADMESH_WORKERS``.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy

from . import __version__
from .chebmesh import POINT_KINDS, ZEROS, MeshParams, boundary_mesh, norming_constant
from .errors import AdmeshError, DomainError, GeometryError, UsageError
from .extremal import approximate_fekete, discrete_leja, pseudo_leja, pseudo_leja_points
from .geometry import GALLERY_NAMES, Boundary, dumps_boundary, gallery, load_boundary
from .projection import lebesgue_constant, make_interpolant, make_least_squares
from .tables import lebesgue_table, mesh_table, nodes_table, write_atomic

FAMILY_CHOICES = ("afp", "leja", "pleja", "ls")
MAX_DEGREE = 200
WORKERS_ENV = "ADMESH_WORKERS"


@dataclass(frozen=True)
class RunConfig:
    domain: str
    families: tuple[str, ...] = ("afp",)
    degrees: tuple[int, ...] = (1,)
    m: float = 4
    kind: str = ZEROS
    eval_m: float | None = None
    out: str | None = None
    format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if not self.degrees or min(self.degrees) < 1 or max(self.degrees) > MAX_DEGREE:
            raise UsageError(f"degrees must lie in [1, {MAX_DEGREE}]")
        if not self.m > 1:
            raise UsageError(f"m must be > 1, got {self.m}")
        if self.eval_m is not None and not self.eval_m > 1:
            raise UsageError(f"eval-m must be > 1, got {self.eval_m}")
        bad = [f for f in self.families if f not in FAMILY_CHOICES]
        if bad or not self.families:
            raise UsageError(f"unknown families {bad}; choose from {', '.join(FAMILY_CHOICES)}")


def resolve_domain(domain: str) -> Boundary:
    """Gallery name or path to a boundary document."""
    if domain in GALLERY_NAMES:
        return gallery(domain)
    if os.path.isfile(domain):
        boundary = load_boundary(domain)
        if not boundary.label:
            boundary = Boundary(boundary.arcs, os.path.splitext(os.path.basename(domain))[0])
        return boundary
    raise UsageError(
        f"unknown domain {domain!r}: not a file and not a gallery name "
        f"({', '.join(GALLERY_NAMES)})")


def parse_degrees(text: str) -> tuple[int, ...]:
    """``"n"``, ``"a:b"`` or ``"a:b:step"`` (inclusive)."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise UsageError(f"bad degree range {text!r}; use n, a:b or a:b:step") from None
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] < 1 or parts[1] < parts[0]:
        raise UsageError(f"bad degree range {text!r}; use n, a:b or a:b:step")
    return tuple(range(parts[0], parts[1] + 1, parts[2]))


def parse_families(text: str) -> tuple[str, ...]:
    fams = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in fams if f not in FAMILY_CHOICES]
    if bad or not fams:
        raise UsageError(f"unknown families {bad}; choose from {', '.join(FAMILY_CHOICES)}")
    return fams


# ---------------------------------------------------------------------------
# computations shared by subcommands and the reproduce workers

def extract_nodes(boundary: Boundary, family: str, n: int, m: float, kind: str,
                  mesh=None, basis=None, pleja_points=None):
    if family == "pleja":
        return pseudo_leja(boundary, n, m, kind, points=pleja_points)
    if mesh is None:
        mesh = boundary_mesh(boundary, MeshParams(n, m, kind))
    if family == "afp":
        return approximate_fekete(mesh, n, basis)
    if family == "leja":
        return discrete_leja(mesh, n, basis)
    raise UsageError(f"family {family!r} does not extract nodes")


def lebesgue_reports(boundary: Boundary, family: str, degrees, m: float = 4,
                     kind: str = ZEROS, eval_m: float | None = None):
    """One certified Lebesgue report per degree for a single family."""
    reports = []
    pleja_points = None
    if family == "pleja":
        pleja_points = pseudo_leja_points(boundary, max(degrees), m, kind)
    for n in degrees:
        mesh = boundary_mesh(boundary, MeshParams(n, m, kind))
        if family == "ls":
            op = make_least_squares(mesh)
        else:
            nodes = extract_nodes(boundary, family, n, m, kind, mesh=mesh,
                                  pleja_points=pleja_points)
            op = make_interpolant(nodes)
        eval_mesh = mesh if eval_m is None else boundary_mesh(boundary, MeshParams(n, eval_m, kind))
        reports.append(lebesgue_constant(op, eval_mesh, family))
    return reports


# ---------------------------------------------------------------------------
# subcommands

def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_gallery(args) -> int:
    if args.name is None:
        for name in GALLERY_NAMES:
            b = gallery(name)
            kinds = ", ".join(f"{a.kind[:4]}{a.degree}" for a in b.arcs)
            print(f"{name}\t{len(b.arcs)} arcs\t{kinds}")
        return 0
    if args.name not in GALLERY_NAMES:
        raise UsageError(f"unknown gallery domain {args.name!r}; valid names: {', '.join(GALLERY_NAMES)}")
    _emit(dumps_boundary(gallery(args.name)), args.out)
    return 0


def cmd_mesh(args) -> int:
    cfg = RunConfig(args.domain, degrees=(args.n,), m=args.m, kind=args.kind,
                    out=args.out, format=args.format)
    boundary = resolve_domain(cfg.domain)
    mesh = boundary_mesh(boundary, MeshParams(args.n, cfg.m, cfg.kind))
    _emit(mesh_table(mesh).dumps(cfg.format), cfg.out)
    summary = f"points: {len(mesh)}\nc_m: {mesh.c:.17g}\n"
    (sys.stdout if cfg.out else sys.stderr).write(summary)
    return 0


def cmd_extract(args) -> int:
    fams = parse_families(args.families)
    if "ls" in fams:
        raise UsageError("'ls' has no nodes to extract; choose from afp, leja, pleja")
    cfg = RunConfig(args.domain, fams, (args.n,), args.m, args.kind, out=args.out,
                    format=args.format)
    boundary = resolve_domain(cfg.domain)
    mesh = boundary_mesh(boundary, MeshParams(args.n, cfg.m, cfg.kind))
    basis = None
    for fam in cfg.families:
        nodes = extract_nodes(boundary, fam, args.n, cfg.m, cfg.kind, mesh=mesh, basis=basis)
        if fam != "pleja":
            basis = nodes.basis
        text = nodes_table(nodes).dumps(cfg.format)
        if cfg.out:
            path = os.path.join(cfg.out, f"nodes_{boundary.label}_{fam}_n{args.n}.{cfg.format}")
            write_atomic(path, text)
            print(f"{fam}: {len(nodes)} nodes -> {path}")
        else:
            sys.stdout.write(text)
    return 0


def cmd_lebesgue(args) -> int:
    cfg = RunConfig(args.domain, parse_families(args.families), parse_degrees(args.degrees),
                    args.m, args.kind, args.eval_m, args.out, args.format)
    boundary = resolve_domain(cfg.domain)
    reports = []
    for fam in cfg.families:
        reports += lebesgue_reports(boundary, fam, cfg.degrees, cfg.m, cfg.kind, cfg.eval_m)
    header = {"boundary": boundary.label, "m": cfg.m, "kind": cfg.kind,
              "eval_m": cfg.eval_m if cfg.eval_m is not None else cfg.m,
              "c_m": norming_constant(cfg.eval_m or cfg.m)}
    _emit(lebesgue_table(reports, header).dumps(cfg.format), cfg.out)
    return 0


def _reproduce_job(job):
    domain, family, degrees, m, kind = job
    t0 = time.perf_counter()
    try:
        reports = lebesgue_reports(gallery(domain), family, degrees, m, kind)
    except Exception as exc:
        raise RuntimeError(f"reproduce failed for ({domain}, {family}): {exc}") from exc
    return domain, family, reports, time.perf_counter() - t0


def _workers(requested: int | None) -> int:
    if requested:
        return requested
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise UsageError(f"{WORKERS_ENV} must be >= 1")
        return value
    return max(1, min(4, os.cpu_count() or 1))


def cmd_reproduce(args) -> int:
    degrees = parse_degrees(args.degrees)
    cfg = RunConfig("gallery", FAMILY_CHOICES, degrees, args.m, args.kind, out=args.out,
                    format=args.format, seed=args.seed)
    out = cfg.out
    t_start = time.perf_counter()
    timings = {}

    # figure data: meshes and AFP nodes at degree 20 with m = 2
    for domain in GALLERY_NAMES:
        b = gallery(domain)
        t0 = time.perf_counter()
        mesh = boundary_mesh(b, MeshParams(args.figure_n, 2, cfg.kind))
        write_atomic(os.path.join(out, f"mesh_{domain}_n{args.figure_n}_m2.{cfg.format}"),
                     mesh_table(mesh).dumps(cfg.format))
        nodes = approximate_fekete(mesh)
        write_atomic(os.path.join(out, f"nodes_{domain}_afp_n{args.figure_n}_m2.{cfg.format}"),
                     nodes_table(nodes).dumps(cfg.format))
        timings[f"figure/{domain}"] = time.perf_counter() - t0

    jobs = [(d, f, degrees, cfg.m, cfg.kind) for d in GALLERY_NAMES for f in FAMILY_CHOICES]
    results = {}
    workers = _workers(args.workers)
    if workers == 1:
        outputs = map(_reproduce_job, jobs)
        for domain, family, reports, dt in outputs:
            results[(domain, family)] = reports
            timings[f"lebesgue/{domain}/{family}"] = dt
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for domain, family, reports, dt in pool.map(_reproduce_job, jobs):
                results[(domain, family)] = reports
                timings[f"lebesgue/{domain}/{family}"] = dt

    reports = [r for d in GALLERY_NAMES for f in FAMILY_CHOICES for r in results[(d, f)]]
    header = {"m": cfg.m, "kind": cfg.kind, "c_m": norming_constant(cfg.m)}
    write_atomic(os.path.join(out, f"lebesgue.{cfg.format}"),
                 lebesgue_table(reports, header).dumps(cfg.format))

    manifest = {
        "package": "admesh",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "seed": cfg.seed,
        "domains": list(GALLERY_NAMES),
        "families": list(FAMILY_CHOICES),
        "degrees": [min(degrees), max(degrees)],
        "m": cfg.m,
        "kind": cfg.kind,
        "c_m": norming_constant(cfg.m),
        "figure_degree": args.figure_n,
        "figure_m": 2,
        "lebesgue_rows": len(reports),
        "workers": workers,
        "timings_seconds": {k: round(v, 3) for k, v in timings.items()},
        "total_seconds": round(time.perf_counter() - t_start, 3),
    }
    write_atomic(os.path.join(out, "manifest.json"), json.dumps(manifest, indent=2) + "\n")
    print(f"{len(reports)} Lebesgue rows -> {os.path.join(out, 'lebesgue.' + cfg.format)}")
    return 0


# ---------------------------------------------------------------------------

def _positive_float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="admesh",
        description="Chebyshev admissible meshes, extremal nodes and certified Lebesgue constants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=True):
        p.add_argument("--domain", required=True, help="gallery name or boundary document path")
        if degree:
            p.add_argument("--n", type=int, required=True, help="polynomial degree")
        p.add_argument("--m", type=_positive_float, default=4.0, help="oversampling factor (> 1)")
        p.add_argument("--kind", choices=POINT_KINDS, default=ZEROS)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gallery", help="list gallery domains or dump one as a boundary document")
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("mesh", help="build an admissible mesh")
    common(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("extract", help="extract interpolation nodes")
    common(p)
    p.add_argument("--families", default="afp", help="comma list of afp, leja, pleja")
    p.add_argument("--out", help="output directory (default stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("lebesgue", help="certified Lebesgue constants over a degree range")
    common(p, degree=False)
    p.add_argument("--degrees", default="1:50", help="n, a:b or a:b:step")
    p.add_argument("--families", default="afp,leja,pleja,ls")
    p.add_argument("--eval-m", type=_positive_float, default=None,
                   help="independent evaluation factor (default: extraction mesh)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("reproduce", help="run the six-domain experiment suite")
    p.add_argument("--out", default="reproduce_out", help="output directory")
    p.add_argument("--degrees", default="1:50")
    p.add_argument("--m", type=_positive_float, default=4.0)
    p.add_argument("--kind", choices=POINT_KINDS, default=ZEROS)
    p.add_argument("--figure-n", type=int, default=20)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GeometryError, DomainError) as exc:
        print(f"admesh: error: {exc}", file=sys.stderr)
        return 2
    except (AdmeshError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"admesh: failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
