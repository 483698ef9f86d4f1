"""Command-line front end.

Every command prints one JSON report (``--pretty`` for an indented text
rendering). Exit status: 0 when the check passes (or the command has no
verdict), 1 for a negative verdict, 2 for any error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from fractions import Fraction

from . import io, kernels, paperlab, svg
from .covering import CoverVerdict, convex_normal_at, k_convex_normal, pair_convex_normal
from .errors import GeometryError
from .fan import edge_hypothesis, normal_fan, phi_table, refines
from .geometry import Polytope, as_rational, minkowski_sum, scale
from .lattice import BUDGET_ENV, PointSet, g_set, idp_pair, idp_single, lattice_points, sumset

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

fmt, fmt_point = io.fmt, io.fmt_point


class UsageError(GeometryError):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _points(S: PointSet) -> dict:
    return {"count": len(S), "points": [fmt_point(p) for p in S.points]}


def _face(P: Polytope, F) -> list:
    return [fmt_point(P.vertices[i]) for i in F.vertex_indices]


def _verdict(v: CoverVerdict) -> dict:
    out = {"covered": v.covered, "witness": None if v.witness is None else fmt_point(v.witness)}
    if not v.covered:
        out["residual_cells"] = [[fmt_point(p) for p in c.vertices] for c in v.residual_cells]
    if v.notes:
        out["notes"] = list(v.notes)
    return out


def _one(files: list[str], what: str = "polytope") -> Polytope:
    if len(files) != 1:
        raise UsageError(f"expected one {what} file, got {len(files)}")
    return io.load_polytope(files[0])


def _two(files: list[str]) -> tuple[Polytope, Polytope]:
    if len(files) != 2:
        raise UsageError(f"expected two polytope files, got {len(files)}")
    return io.load_polytope(files[0]), io.load_polytope(files[1])


# ---------------------------------------------------------------------------
# commands; each returns (result, exit status)


def cmd_lattice_points(args):
    return _points(lattice_points(io.load_polytope(args.file))), EXIT_OK


def cmd_gset(args):
    return _points(g_set(io.load_polytope(args.file))), EXIT_OK


def cmd_sumset(args):
    A, B = io.load_polytope(args.a), io.load_polytope(args.b)
    pick = g_set if args.of == "gset" else lattice_points
    return {"of": args.of, **_points(sumset(pick(A), pick(B)))}, EXIT_OK


def cmd_minkowski(args):
    return io.polytope_summary(minkowski_sum(io.load_polytope(args.a), io.load_polytope(args.b))), EXIT_OK


def cmd_scale(args):
    return io.polytope_summary(scale(io.load_polytope(args.file), args.c)), EXIT_OK


def cmd_edges(args):
    P = io.load_polytope(args.file)
    rows = [
        {"endpoints": [fmt_point(p) for p in e.endpoints], "direction": list(e.direction), "length": fmt(e.length)}
        for e in P.edges()
    ]
    return {"count": len(rows), "edges": rows}, EXIT_OK


def cmd_idp(args):
    if args.pair:
        Q, P = _two(args.files)
        v = idp_pair(Q, P)
    else:
        v = idp_single(_one(args.files), args.kmax)
    res = {"holds": v.holds, "witness": None if v.witness is None else fmt_point(v.witness), "checked": v.checked_range}
    return res, EXIT_OK if v.holds else EXIT_NEGATIVE


def cmd_convex_normal(args):
    P = io.load_polytope(args.file)
    if args.c is not None:
        v = convex_normal_at(P, args.c)
        return {"c": fmt(args.c), **_verdict(v)}, EXIT_OK if v.covered else EXIT_NEGATIVE
    rep = k_convex_normal(P, args.k, args.denom, args.mode)
    res = {
        "mode": rep.mode,
        "k": fmt(rep.k),
        "holds": rep.holds,
        "claim": rep.claim,
        "checks": [{"c": fmt(c), **_verdict(v)} for c, v in rep.results],
        "inferred": [{"c": fmt(c), "by": why} for c, why in rep.inferred],
    }
    return res, EXIT_OK if rep.holds else EXIT_NEGATIVE


def cmd_convex_normal_pair(args):
    v = pair_convex_normal(io.load_polytope(args.q), io.load_polytope(args.p))
    return _verdict(v), EXIT_OK if v.covered else EXIT_NEGATIVE


def cmd_fan(args):
    P = io.load_polytope(args.file)
    fan = normal_fan(P)
    rows = [
        {"face": _face(P, f), "dim": f.dim, "generators": [list(g) for g in c.generators]}
        for f, c in sorted(fan.cones.items())
    ]
    return {"cones": rows}, EXIT_OK


def cmd_refines(args):
    r = refines(io.load_polytope(args.p), io.load_polytope(args.q))
    return {"refines": r}, EXIT_OK if r else EXIT_NEGATIVE


def cmd_phi(args):
    P, Q = io.load_polytope(args.p), io.load_polytope(args.q)
    table = phi_table(P, Q)
    rows = [
        {"face": _face(P, f), "image": _face(Q, img), "image_dim": img.dim}
        for f, img in sorted(table.assignment.items())
    ]
    return {"table": rows}, EXIT_OK


def cmd_edge_check(args):
    P, Q = io.load_polytope(args.p), io.load_polytope(args.q)
    rep = edge_hypothesis(P, Q, args.factor)
    rows = [
        {
            "edge": [fmt_point(x) for x in e.edge.endpoints],
            "image": _face(Q, e.image),
            "length": fmt(e.length),
            "image_length": None if e.image_length is None else fmt(e.image_length),
            "status": e.status,
        }
        for e in rep.pairs
    ]
    return {"factor": fmt(rep.factor), "holds": rep.holds, "pairs": rows, "note": rep.note}, (
        EXIT_OK if rep.holds else EXIT_NEGATIVE
    )


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, Polytope):
        return [fmt_point(v) for v in x.vertices]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_verify_paper(args):
    results = paperlab.run_catalog(args.filter)
    rows = [
        {
            "name": r.name,
            "anchor": r.anchor,
            "passed": r.passed,
            "elapsed_s": round(r.elapsed, 4),
            **({} if r.passed else {"expected": _jsonable(r.expected), "actual": _jsonable(r.actual)}),
        }
        for r in results
    ]
    ok = all(r.passed for r in results)
    return {"cases": rows, "passed": sum(r.passed for r in results), "total": len(results)}, (
        EXIT_OK if ok else EXIT_NEGATIVE
    )


def cmd_harness(args):
    if args.which == "mainB":
        rep = paperlab.harness_mainB(args.trials, args.dim, args.seed)
    elif args.which == "main-lemma":
        rep = paperlab.harness_main_lemma_random(args.trials, seed=args.seed)
    elif args.which == "sum":
        rep = paperlab.harness_sum(args.trials, args.seed)
    else:
        rep = paperlab.harness_lemmaA(args.trials, args.seed)
    res = {
        "label": rep.label,
        "trials": rep.trials,
        "failures": [{"seed": s, "instance": d, "message": m} for s, d, m in rep.failures],
        "notes": rep.notes,
        "elapsed_s": round(rep.elapsed, 4),
    }
    return res, EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_svg(args):
    if args.kind == "cover":
        if args.c is None:
            raise UsageError("svg cover needs --c")
        P = _one(args.files)
        text = svg.convex_normal_svg(P, args.c)
    elif args.kind == "pair":
        Q, P = _two(args.files)
        text = svg.pair_svg(Q, P)
    else:
        text = svg.fan_svg(_one(args.files))
    if args.out is None:
        sys.stdout.write(text)
        return None, EXIT_OK
    svg.write(args.out, text)
    return {"kind": args.kind, "out": args.out, "bytes": len(text.encode())}, EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indented text instead of JSON")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"enumeration cap (default from ${BUDGET_ENV})")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="convnormal", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help):
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("lattice-points", cmd_lattice_points, "integer points of a polytope")
    p.add_argument("file", nargs="?", default="-")
    p = add("gset", cmd_gset, "the G-set of a rational polytope")
    p.add_argument("file", nargs="?", default="-")
    p = add("sumset", cmd_sumset, "pairwise sums of lattice points (or G-sets) of two polytopes")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--of", choices=["lattice", "gset"], default="lattice")
    p = add("minkowski", cmd_minkowski, "Minkowski sum of two polytopes")
    p.add_argument("a")
    p.add_argument("b")
    p = add("scale", cmd_scale, "dilate a polytope by a positive rational")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--c", type=_rational_arg, required=True)
    p = add("edges", cmd_edges, "edges with primitive directions and lattice lengths")
    p.add_argument("file", nargs="?", default="-")

    p = add("idp", cmd_idp, "integer decomposition check (single polytope or --pair Q P)")
    p.add_argument("files", nargs="+")
    p.add_argument("--pair", action="store_true")
    p.add_argument("--kmax", type=int)

    p = add("convex-normal", cmd_convex_normal, "cP = G((c-1)P) + P at one c, or over a range")
    p.add_argument("file", nargs="?", default="-")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--c", type=_rational_arg)
    g.add_argument("--k", type=_rational_arg)
    p.add_argument("--denom", type=int, default=1, help="largest denominator on the grid (with --k)")
    p.add_argument("--mode", choices=["grid", "integer-steps"], default="grid")
    p = add("convex-normal-pair", cmd_convex_normal_pair, "Q + P = G(Q) + P, files in (Q, P) order")
    p.add_argument("q")
    p.add_argument("p")

    p = add("fan", cmd_fan, "normal fan: face -> cone generators")
    p.add_argument("file", nargs="?", default="-")
    p = add("refines", cmd_refines, "does N(P) refine N(Q)")
    p.add_argument("p")
    p.add_argument("q")
    p = add("phi", cmd_phi, "face map from P to Q")
    p.add_argument("p")
    p.add_argument("q")
    p = add("edge-check", cmd_edge_check, "edge lengths of P against factor times their images in Q")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--factor", type=_rational_arg, required=True)

    p = add("verify-paper", cmd_verify_paper, "run the catalog of worked examples")
    p.add_argument("--filter")
    p = add("harness", cmd_harness, "seeded randomized checks")
    p.add_argument("--which", choices=["mainB", "main-lemma", "sum", "lemmaA"], required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)

    p = add("svg", cmd_svg, "planar figures: cover (--c), pair (Q P) or fan")
    p.add_argument("kind", choices=["cover", "pair", "fan"])
    p.add_argument("files", nargs="+")
    p.add_argument("--c", type=_rational_arg)
    p.add_argument("--out")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    pretty = getattr(args, "pretty", False)
    budget = getattr(args, "budget", None)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    saved = os.environ.get(BUDGET_ENV)
    if budget is not None:
        os.environ[BUDGET_ENV] = str(budget)
    try:
        return _run(args, argv, pretty)
    finally:
        if saved is None:
            os.environ.pop(BUDGET_ENV, None)
        else:
            os.environ[BUDGET_ENV] = saved


def _run(args, argv: list[str], pretty: bool) -> int:
    logging.getLogger(__name__).info("kernel backend: %s", kernels.backend())
    t0 = time.perf_counter()
    try:
        result, status = args.func(args)
    except (GeometryError, ValueError) as exc:
        kind = type(exc).__name__
        print(f"convnormal: error: {kind}: {exc}", file=sys.stderr)
        rep = io.report(argv, None)
        rep["error"] = {"type": kind, "message": str(exc)}
        _emit(rep, pretty)
        return EXIT_ERROR
    if result is None:
        return status
    rep = io.report(argv, result, time.perf_counter() - t0)
    _emit(rep, pretty)
    return status


def _emit(rep: dict, pretty: bool):
    if pretty:
        sys.stdout.write(io.pretty(rep) + "\n")
    else:
        sys.stdout.write(io.dumps_report(rep))


if __name__ == "__main__":
    sys.exit(main())
