"""``sympencil`` command line interface.

Every subcommand writes one JSON document to stdout; human-readable tables
go to stderr.  The exit status is 0 exactly when all checks performed by
the command pass.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .canonical import (
    GenericComponent,
    JordanFinite,
    JordanInfinite,
    StructureDescriptor,
    build_block,
)
from .experiments import (
    SeededSampler,
    degenerate_jordan_finite,
    degenerate_jordan_infinite,
    genericity_trial,
    verify_example_1_1,
)
from .extract import extract_structure
from .geometry import codim_bundle_generic, codim_bundle_numeric, codim_orbit_generic, codim_orbit_numeric
from .order import obstruction_table
from .rank import IndeterminateStructureError, Tolerances
from .serialization import descriptor_to_json, load_pencil, pencil_to_json


def parse_complex(text: str) -> complex:
    """Accept ``"1.5"``, ``"1.5,-2"`` (real, imaginary) or ``"1.5-2j"``."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",", 1)
        return complex(float(re), float(im))
    return complex(text.replace(" ", ""))


def _tolerances(args) -> Tolerances:
    return Tolerances(rank=args.tol, gap=args.gap, cluster=args.cluster_tol)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=_default)
    sys.stdout.write("\n")


def _default(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.integer, np.floating)):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def _component_row(c: GenericComponent) -> dict:
    return {
        "a": c.a,
        "alpha": c.alpha,
        "s": c.s,
        "bundle": descriptor_to_json(c.bundle_descriptor()),
        "structure": c.bundle_descriptor().summary(),
        "codim_orbit": codim_orbit_generic(c),
        "codim_bundle": codim_bundle_generic(c),
    }


# subcommands ---------------------------------------------------------------


def cmd_kcf(args) -> int:
    pencil = load_pencil(args.pencil)
    try:
        d = extract_structure(pencil, _tolerances(args))
    except IndeterminateStructureError as exc:
        _emit({"error": "indeterminate structure", "message": str(exc), "gap": exc.gap})
        return 1
    _emit({"descriptor": descriptor_to_json(d), "summary": d.summary(), "rank": d.rank})
    _note(d.summary())
    return 0


def cmd_generic(args) -> int:
    comps = GenericComponent.all_for(args.n, args.r)
    keys = {c.bundle_descriptor().bundle_key() for c in comps}
    ok = len(keys) == len(comps) == args.r // 2 + 1
    _emit({"n": args.n, "r": args.r, "count": len(comps), "distinct": ok, "components": [_component_row(c) for c in comps]})
    for c in comps:
        _note(f"a={c.a}: {c.bundle_descriptor().summary():40s} codim orbit {codim_orbit_generic(c):3d}  bundle {codim_bundle_generic(c):3d}")
    return 0 if ok else 1


def cmd_codim(args) -> int:
    comps = GenericComponent.all_for(args.n, args.r)
    if args.a is not None:
        comps = [GenericComponent(args.n, args.r, args.a)]
    out = {"n": args.n, "r": args.r, "table": [_component_row(c) for c in comps]}
    ok = True
    if args.numeric:
        tol = _tolerances(args)
        s = load_pencil(args.numeric, symmetric=True)
        try:
            structure = extract_structure(s, tol, symmetric=True)
            orbit = codim_orbit_numeric(s, tol)
            bundle = codim_bundle_numeric(s, tol)
        except IndeterminateStructureError as exc:
            _emit({**out, "numeric": {"error": str(exc)}})
            return 1
        numeric = {"structure": structure.summary(), "codim_orbit": orbit, "codim_bundle": bundle}
        match = [c for c in comps if c.n == s.n and structure.same_bundle(c.bundle_descriptor())]
        if match:
            c = match[0]
            numeric["matches_component"] = c.a
            ok = orbit == codim_orbit_generic(c) and bundle == codim_bundle_generic(c)
        elif args.a is not None:
            ok = False
            numeric["matches_component"] = None
        numeric["consistent"] = ok
        out["numeric"] = numeric
    _emit(out)
    for row in out["table"]:
        _note(f"a={row['a']}: codim orbit {row['codim_orbit']:3d}  bundle {row['codim_bundle']:3d}")
    return 0 if ok else 1


def cmd_closure_check(args) -> int:
    table = obstruction_table(args.n, args.r)
    size = args.r // 2 + 1
    cells = [
        {"a": a, "a_prime": ap, "kind": ob.kind, "evidence": ob.evidence}
        for (a, ap), ob in sorted(table.items())
    ]
    ok = all(table.values())
    _emit({"n": args.n, "r": args.r, "all_obstructed": ok, "pairs": cells})
    abbrev = {"minimal-index-majorization": "MAJ", "simple-eigenvalue-multiplicity": "EIG", "none": "---"}
    _note("rows a (closure of bun K_a), columns a' (is bun K_a' inside?)")
    _note("      " + " ".join(f"{ap:>4d}" for ap in range(size)))
    for a in range(size):
        cells_txt = [" .  " if a == ap else f"{abbrev[table[(a, ap)].kind]:>4s}" for ap in range(size)]
        _note(f"{a:>4d}  " + " ".join(cells_txt))
    return 0 if ok else 1


def cmd_sample(args) -> int:
    c = GenericComponent(args.n, args.r, args.a)
    sampler = SeededSampler(args.seed, cond_cap=args.cond_cap)
    report = genericity_trial(c, sampler, args.trials, _tolerances(args), workers=args.workers)
    _emit(report.to_dict())
    _note(f"{report.name}: {report.successes}/{report.trials} matched")
    return 0 if report.passed else 1


def cmd_degenerate(args) -> int:
    tol = _tolerances(args)
    if args.kind == "jordan":
        mu = parse_complex(args.mu)
        s = degenerate_jordan_finite(args.size, mu, args.t)
        limit = build_block(JordanFinite(args.size, mu))
    else:
        s = degenerate_jordan_infinite(args.size, args.t)
        limit = build_block(JordanInfinite(args.size))
    distance = (s - limit).norm()
    try:
        d = extract_structure(s, tol, symmetric=True)
    except IndeterminateStructureError as exc:
        _emit({"pencil": pencil_to_json(s), "error": str(exc)})
        return 1
    if args.t > 0:
        ok = d.simple_eigenvalue_count() == args.size and d.regular_size == args.size
    else:
        expected = JordanFinite(args.size, mu) if args.kind == "jordan" else JordanInfinite(args.size)
        ok = d.same_orbit(StructureDescriptor((expected,)))
    ok = ok and abs(distance - args.t) <= 1e-15 * max(1.0, args.t)
    _emit(
        {
            "pencil": pencil_to_json(s),
            "descriptor": descriptor_to_json(d),
            "summary": d.summary(),
            "distance_to_limit": distance,
            "ok": ok,
            "note": "t ranges are engineering choices; any t > 0 small enough is admissible",
        }
    )
    _note(d.summary())
    return 0 if ok else 1


def cmd_verify_example(args) -> int:
    try:
        report = verify_example_1_1(
            parse_complex(args.l1), parse_complex(args.l2), parse_complex(args.e1), parse_complex(args.e2),
            _tolerances(args),
        )
    except ValueError as exc:
        _emit({"error": str(exc)})
        return 2
    _emit(report.to_dict())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sympencil", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="relative rank tolerance")
    common.add_argument("--gap", type=float, default=10.0, help="required singular value gap ratio")
    common.add_argument("--cluster-tol", type=float, default=1e-6, help="eigenvalue clustering tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kcf", parents=[common], help="complete eigenstructure of a pencil")
    p.add_argument("pencil")
    p.set_defaults(func=cmd_kcf)

    p = sub.add_parser("generic", help="list the generic components for n, r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("codim", parents=[common], help="codimensions of the generic orbits and bundles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--numeric", metavar="PENCIL_JSON")
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("closure-check", help="pairwise closure obstructions between generic bundles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_closure_check)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo check of a generic bundle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cond-cap", type=float, default=100.0)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("degenerate", parents=[common], help="perturbed Jordan-like block")
    p.add_argument("--kind", choices=["jordan", "jordan-inf"], required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mu", default="0", help="eigenvalue as RE,IM (finite kind only)")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("verify-example", parents=[common], help="check the explicit 3x3 strict equivalence")
    p.add_argument("--l1", default="1")
    p.add_argument("--l2", default="2")
    p.add_argument("--e1", default="1e-3")
    p.add_argument("--e2", default="1e-3")
    p.set_defaults(func=cmd_verify_example)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
