"""Command line front end: seeded batch experiments with JSON or CSV output.

Exit status: 0 success, 2 usage/validation error, 3 property check failed.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable

import numpy as np

from . import linalg as la
from .boundary import (
    SurfaceData,
    boundary,
    boundary_par,
    diagram_check,
    dim_estimate,
)
from .errors import ValidationError
from .kempf_ness import FlowStatus, kn_flow
from .reduction import eta_witness
from .retraction import ParabolicData, build_retraction
from .sampling import map_samples, random_pardata, random_rep_tuple, random_regular_diagonal
from .serialize import complex_to_json, dumps, element_to_json, to_csv
from .traces import (
    FrickeVariant,
    fricke_cubic,
    fricke_scale,
    sl2_lift,
    sl2_seven_traces,
    sl2_trace_triple,
    sl3_nine_traces,
    sl3_transpose_involution,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 2, 3
SETUP_STREAM = 2**32 - 1


class UsageError(ValidationError):
    pass


def _dim(args) -> int:
    return {"sl2": 2, "sl3": 3}[args.group]


def _setup_rng(args) -> np.random.Generator:
    """Stream for run-level data (parabolic classes) separate from per-sample streams."""
    return np.random.default_rng(np.random.SeedSequence([args.seed & (2**64 - 1), SETUP_STREAM]))


def _tol(args, default: float) -> float:
    return default if args.tol is None else args.tol


def _surface(args) -> SurfaceData:
    genus = args.genus
    b = args.punctures if args.punctures is not None else args.m + (args.n or 0) + 1 - 2 * genus
    n = args.n if args.n is not None else 2 * genus + b - 1 - args.m
    return SurfaceData(genus, b, args.m, n)


def _tuple_json(tup) -> dict:
    return {
        "orbit": [element_to_json(y) for y in tup.orbit_components],
        "free": [element_to_json(g) for g in tup.free_components],
    }


# --- commands ---------------------------------------------------------

def cmd_sample(args):
    dim = _dim(args)
    pardata = random_pardata(_setup_rng(args), dim, args.m)
    n = args.n or 0

    def one(rng, i):
        return {"index": i, **_tuple_json(random_rep_tuple(rng, pardata, n, dim, args.radius))}

    rows = map_samples(one, args.seed, args.samples)
    return {"h": [element_to_json(h) for h in pardata.h], "rows": rows}, True


def cmd_polar(args):
    dim, tol = _dim(args), _tol(args, 1e-10)

    def one(rng, i):
        g = la.random_group_element(rng, dim, args.radius)
        k, p = la.polar_decompose(g)
        err = la.frob(k @ la.hermitian_exp(p) - g) / la.frob(g)
        return {"index": i, "g": element_to_json(g), "k": element_to_json(k),
                "p": element_to_json(p), "error": err}

    rows = map_samples(one, args.seed, args.samples)
    worst = max((r["error"] for r in rows), default=0.0)
    return {"summary": {"max_error": worst, "tol": tol}, "rows": rows}, worst <= tol


def cmd_retract(args):
    dim = _dim(args)
    pardata = random_pardata(_setup_rng(args), dim, args.m)
    n = args.n if args.n is not None else 1
    grid = np.linspace(0.0, 1.0, args.steps + 1)

    def one(rng, i):
        tup = random_rep_tuple(rng, pardata, n, dim, args.radius)
        path = build_retraction(tup)
        samples = [{"t": float(t), **_tuple_json(path.evaluate(float(t)))} for t in grid]
        end0 = path.evaluate(0.0)
        end1 = path.evaluate(1.0)
        return {
            "index": i,
            "path": path.to_json(),
            "grid": samples,
            "t1_error": end1.distance(tup),
            "t0_unitarity": max((la.frob(la.dagger(c) @ c - np.eye(dim)) for c in end0.components),
                                default=0.0),
        }

    rows = map_samples(one, args.seed, args.samples)
    t1 = max((r["t1_error"] for r in rows), default=0.0)
    t0 = max((r["t0_unitarity"] for r in rows), default=0.0)
    ok = t1 <= 1e-9 and t0 <= 1e-8
    return {"summary": {"max_t1_error": t1, "max_t0_unitarity": t0}, "rows": rows}, ok


def cmd_kn_flow(args):
    dim, tol = _dim(args), _tol(args, 1e-6)
    if args.start == "unipotent":
        if dim != 2:
            raise UsageError("the unipotent start is defined for sl2")
        pardata = ParabolicData.from_elements([])
        _, report = kn_flow([], [np.array([[1, 1], [0, 1]], dtype=complex)], pardata,
                            tol=tol, max_iter=args.max_iter)
        rows = [{"index": 0, "report": report.to_json()}]
        return {"rows": rows}, True
    pardata = random_pardata(_setup_rng(args), dim, args.m)
    n = args.n if args.n is not None else 2

    def one(rng, i):
        g = la.random_group_element(rng, dim, args.radius)
        gi = np.linalg.inv(g)
        f = [g @ la.random_unitary(rng, dim) for _ in range(pardata.m)]
        free = [g @ la.random_unitary(rng, dim) @ gi for _ in range(n)]
        _, report = kn_flow(f, free, pardata, tol=tol, max_iter=args.max_iter)
        return {"index": i, "report": report.to_json()}

    rows = map_samples(one, args.seed, args.samples)
    ok = all(r["report"]["status"] == FlowStatus.CONVERGED.value for r in rows)
    return {"rows": rows}, ok


def cmd_traces(args):
    dim = _dim(args)

    def one(rng, i):
        if dim == 3:
            g1, g2 = (la.random_group_element(rng, 3, args.radius) for _ in range(2))
            return {"index": i, "traces": sl3_nine_traces(g1, g2).to_json()}
        if (args.n or 2) == 3:
            gs = [la.random_group_element(rng, 2, args.radius) for _ in range(3)]
            return {"index": i, "traces": sl2_seven_traces(*gs).to_json()}
        g1, g2 = (la.random_group_element(rng, 2, args.radius) for _ in range(2))
        x, y, z = sl2_trace_triple(g1, g2)
        return {"index": i, "traces": {"x": complex_to_json(x), "y": complex_to_json(y),
                                       "z": complex_to_json(z)}}

    return {"rows": map_samples(one, args.seed, args.samples)}, True


def cmd_fricke_check(args):
    if _dim(args) != 2:
        raise UsageError("fricke-check is defined for sl2")
    tol = _tol(args, 1e-8)

    def one(rng, i):
        if i == 0:
            gs = [np.eye(2, dtype=complex)] * 3
        else:
            gs = [la.random_group_element(rng, 2, args.radius) for _ in range(3)]
        coords = sl2_seven_traces(*gs).values
        return (fricke_cubic(*coords, variant=FrickeVariant.CORRECTED),
                fricke_cubic(*coords, variant=FrickeVariant.PAPER_PRINTED),
                fricke_scale(coords))

    vals = map_samples(one, args.seed, args.samples + 1)
    corr = [abs(c) for c, _, _ in vals]
    rel = [abs(c) / s for c, _, s in vals]
    paper = [abs(p) for _, p, _ in vals]
    report = [
        {"variant": "corrected", "max_abs": max(corr), "max_rel": max(rel), "tol": tol,
         "samples": len(vals), "pass": max(rel) <= tol},
        {"variant": "paper", "max_abs": max(paper), "at_identity": complex_to_json(vals[0][1]),
         "samples": len(vals)},
    ]
    return {"rows": report}, max(rel) <= tol


def cmd_lift(args):
    tol = _tol(args, 1e-10)
    fixed = None
    if args.x is not None:
        fixed = [(complex(args.x), complex(args.y or "2"), complex(args.z or "2"))]

    def one(rng, i):
        if fixed is not None:
            target = fixed[0]
        else:
            r = 10 * np.sqrt(rng.uniform(0, 1, 3))
            target = tuple(complex(v) for v in r * np.exp(2j * np.pi * rng.uniform(0, 1, 3)))
        g1, g2 = sl2_lift(*target)
        err = max(abs(a - b) for a, b in zip(sl2_trace_triple(g1, g2), target))
        return {"index": i, "target": [complex_to_json(v) for v in target],
                "g1": element_to_json(g1), "g2": element_to_json(g2), "error": err}

    rows = map_samples(one, args.seed, 1 if fixed is not None else args.samples)
    worst = max(r["error"] for r in rows)
    return {"summary": {"max_error": worst, "tol": tol}, "rows": rows}, worst <= tol


def cmd_boundary(args):
    dim, surface = _dim(args), _surface(args)

    def one(rng, i):
        tup = [la.random_group_element(rng, dim, args.radius) for _ in range(surface.rank)]
        return {"index": i, "boundary": boundary(tup, surface).to_json(),
                "boundary_par": boundary_par(tup, surface.m).to_json()}

    return {"rows": map_samples(one, args.seed, args.samples)}, True


def cmd_diagram_check(args):
    dim, surface, tol = _dim(args), _surface(args), _tol(args, 1e-12)

    def one(rng, i):
        tup = [la.random_group_element(rng, dim, args.radius) for _ in range(surface.rank)]
        return {"index": i, "discrepancy": diagram_check(tup, surface)}

    rows = map_samples(one, args.seed, args.samples)
    worst = max((r["discrepancy"] for r in rows), default=0.0)
    summary = {"genus": surface.genus, "punctures": surface.punctures, "m": surface.m,
               "n": surface.n, "max_discrepancy": worst, "tol": tol}
    return {"summary": summary, "rows": rows}, worst <= tol


def cmd_dim(args):
    dim = _dim(args)
    rng = _setup_rng(args)
    hs = [random_regular_diagonal(rng, dim) for _ in range(args.m)]
    if args.identity_first and hs:
        hs[0] = np.eye(dim, dtype=complex)
    pardata = ParabolicData.from_elements(hs)
    est = dim_estimate(pardata, args.n or 0, max(1, args.samples), rng, dim=dim)
    return est.to_json(), True


def cmd_eta_check(args):
    dim = _dim(args)
    n = args.n or 0

    def one(rng, i):
        return {"index": i, **eta_witness(rng, dim, args.m, n, depth=args.depth)}

    rows = map_samples(one, args.seed, args.samples)
    wd = max((r["well_defined"] for r in rows), default=0.0)
    surj = max((r["surjective"] for r in rows), default=0.0)
    amb = max((r["inverse_ambiguity"] for r in rows), default=0.0)
    inj = all(r["output_gap"] > 1e-6 for r in rows if r["input_gap"] > 1e-4)
    ok = wd <= 1e-9 and surj <= 1e-9 and amb <= 1e-9 and inj
    summary = {"well_defined": wd, "surjective": surj, "inverse_ambiguity": amb,
               "injective": inj, "pass": ok}
    return {"summary": summary, "rows": rows}, ok


def cmd_two_to_one(args):
    tol = _tol(args, 1e-10)

    def one(rng, i):
        g1, g2 = (la.random_group_element(rng, 3, args.radius) for _ in range(2))
        before = sl3_nine_traces(g1, g2)
        after = sl3_nine_traces(*sl3_transpose_involution(g1, g2))
        return {"index": i,
                "t1_t8": float(np.max(np.abs(before.values[:8] - after.values[:8]))),
                "t9_change": float(abs(before.values[8] - after.values[8]))}

    rows = map_samples(one, args.seed, args.samples)
    preserved = max((r["t1_t8"] for r in rows), default=0.0)
    frac = float(np.mean([r["t9_change"] > 1e-4 for r in rows])) if rows else 0.0
    ok = preserved <= tol and frac >= 0.99
    return {"summary": {"max_t1_t8_change": preserved, "t9_changed_fraction": frac},
            "rows": rows}, ok


COMMANDS: dict[str, Callable] = {
    "sample": cmd_sample,
    "polar": cmd_polar,
    "retract": cmd_retract,
    "kn-flow": cmd_kn_flow,
    "traces": cmd_traces,
    "fricke-check": cmd_fricke_check,
    "lift": cmd_lift,
    "boundary": cmd_boundary,
    "diagram-check": cmd_diagram_check,
    "dim": cmd_dim,
    "eta-check": cmd_eta_check,
    "two-to-one": cmd_two_to_one,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=["sl2", "sl3"], default="sl2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--tol", type=float, default=None,
                        help="check tolerance (command-specific default)")
    common.add_argument("--m", type=int, default=0)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--genus", type=int, default=0)
    common.add_argument("--punctures", type=int, default=None)
    common.add_argument("--radius", type=float, default=1.0)
    common.add_argument("--output", "-o", default="-")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(prog="charvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "retract":
            p.add_argument("--steps", type=int, default=4)
        elif name == "kn-flow":
            p.add_argument("--start", choices=["conjugated", "unipotent"], default="conjugated")
            p.add_argument("--max-iter", type=int, default=10_000)
        elif name == "lift":
            p.add_argument("--x")
            p.add_argument("--y")
            p.add_argument("--z")
        elif name == "dim":
            p.add_argument("--identity-first", action="store_true",
                           help="replace the first class by the identity")
        elif name == "eta-check":
            p.add_argument("--depth", type=int, default=4)
    return parser


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    rows = payload.get("rows") if isinstance(payload, dict) and "rows" in payload else [payload]
    return to_csv(rows)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.samples < 0:
        print("charvar: --samples must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, ok = COMMANDS[args.command](args)
    except (ValidationError, ValueError) as exc:
        print(f"charvar {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _render(payload, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if ok else EXIT_CHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
