"""Command-line front end.

Verbs: skeleton, check, uniformity, generate, verify-theorem, compose.
Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
error, 3 internal inconsistency (the two conservativity checkers disagree).
All output is deterministic for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import analysis
from .errors import CompositionError, FormatError, NGroupoidError
from .hypercube import HypercubeSkeleton, count_faces, dimension_cap, two_face_count
from .matrices import DEFAULT_TOL
from .mixture import load_mixture
from .skeleton import compose, dump_skeleton, load_skeleton

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _write_json(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_skeleton(args) -> int:
    n, cap = args.n, dimension_cap()
    if not 1 <= n <= cap:
        return _fail(f"--n must lie in 1..{cap}, got {n}")
    if args.h is not None:
        if not 0 <= args.h < n:
            return _fail(f"--h must lie in 0..{n - 1}, got {args.h}")
        print(count_faces(n, args.h))
        return EXIT_OK
    verts = 1 << n
    edges = n * (1 << (n - 1))
    if n >= 2:
        print(f"vertices: {verts}, edges: {edges}, 2-faces: {two_face_count(n)}")
    else:
        print(f"vertices: {verts}, edges: {edges}")
    print(
        "h-face counts: "
        + ", ".join(f"h={h}: {count_faces(n, h)}" for h in range(n))
    )
    if n <= 6:
        skel = HypercubeSkeleton(n)
        for axis in range(1, n + 1):
            fp = skel.facet_pair(axis)
            f0 = ",".join(str(v) for v in skel.face_vertices(fp.facet0))
            f1 = ",".join(str(v) for v in skel.face_vertices(fp.facet1))
            print(f"facet pair axis {axis}: {{{f0}}} / {{{f1}}}")
    else:
        print(f"facet pairs: {2 * n} facets, 2 per axis")
    if args.edges:
        skel = HypercubeSkeleton(n)
        for e in skel.edges():
            print(f"{e.tail} -{e.axis}-> {skel.head(e)}")
    return EXIT_OK


def cmd_check(args) -> int:
    T = load_skeleton(args.skeleton_file)
    tol = args.tol
    if args.mixture:
        mix = load_mixture(args.mixture)
        try:
            T.validate_against(mix)
        except ValueError as exc:
            return _fail(f"{args.skeleton_file}: {exc}")
        if tol is None:
            tol = mix.tolerance
    if tol is None:
        tol = DEFAULT_TOL
    report = analysis.is_conservative(T, tol)
    oracle = analysis.conservative_oracle(T, tol)
    if report.verdict:
        print("face check: conservative")
    else:
        print(f"face check: not conservative ({len(report.witnesses)} witness faces)")
        for w in report.witnesses:
            print(
                f"witness face corner={w.corner} "
                f"axes=({w.axes[0]},{w.axes[1]}) deviation={w.deviation:.3e}"
            )
    print(f"potential check: {'conservative' if oracle else 'not conservative'}")
    if args.out:
        doc = report.to_dict()
        doc["potential_check"] = oracle
        _write_json(doc, args.out)
    if report.verdict != oracle:
        print("checkers disagree: internal inconsistency")
        return EXIT_INTERNAL
    print(f"checkers agree: {'conservative' if report.verdict else 'not conservative'}")
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def cmd_uniformity(args) -> int:
    mix = load_mixture(args.mixture_file)
    rep = analysis.is_uniform(mix)
    for name, ok in rep.constituent_transitivity.items():
        print(f"constituent {name}: {'transitive' if ok else 'not transitive'}")
    print(f"core: {'transitive' if rep.verdict else 'not transitive'}")
    if rep.defect_pairs:
        print(
            "defect pairs: "
            + " ".join(f"{s}->{t}" for s, t in rep.defect_pairs)
        )
    else:
        print("defect pairs: none")
    if not rep.verdict and all(rep.constituent_transitivity.values()):
        print("note: all constituents individually uniform")
    print(f"verdict: {'uniform' if rep.verdict else 'not uniform'}")
    if args.out:
        _write_json(rep.to_dict(), args.out)
    return EXIT_OK if rep.verdict else EXIT_NEGATIVE


def cmd_generate(args) -> int:
    cap = dimension_cap()
    if not 1 <= args.n <= cap:
        return _fail(f"--n must lie in 1..{cap}, got {args.n}")
    rng = np.random.default_rng(args.seed)
    T = analysis.random_conservative(args.n, rng)
    if args.mode == "perturbed":
        T, _edge = analysis.perturb_edge(T, rng)
    _emit(dump_skeleton(T), args.out)
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    if not 2 <= args.n <= 5:
        return _fail(f"--n must lie in 2..5, got {args.n}")
    if args.trials < 1:
        return _fail(f"--trials must be >= 1, got {args.trials}")
    tol = DEFAULT_TOL if args.tol is None else args.tol
    res = analysis.theorem_sweep(args.n, args.trials, args.seed, tol)
    t = res["trials"]
    total = res["agree_conservative"] + res["agree_perturbed"]
    print(f"conservative: {res['agree_conservative']}/{t} agreements")
    print(f"perturbed: {res['agree_perturbed']}/{t} agreements")
    print(f"total: {total}/{2 * t} agreements")
    print(
        "max holonomy deviation on conservative instances: "
        f"{res['max_deviation_conservative']:.3e}"
    )
    if total != 2 * t:
        print("checkers disagree: internal inconsistency")
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_compose(args) -> int:
    first = load_skeleton(args.first)
    second = load_skeleton(args.second)
    if not 1 <= args.axis <= max(first.n, second.n):
        return _fail(f"--axis must lie in 1..{max(first.n, second.n)}, got {args.axis}")
    tol = DEFAULT_TOL if args.tol is None else args.tol
    try:
        result = compose(second, first, args.axis, tol)
    except CompositionError as exc:
        print(f"not composable: {exc}")
        return EXIT_NEGATIVE
    _emit(dump_skeleton(result), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ngroupoid",
        description=(
            "Weighted hypercube skeletons: construction, composition, "
            "conservativity and uniformity analysis."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("skeleton", help="counts and structure of the n-cube skeleton")
    s.add_argument("--n", type=int, required=True, help="dimension")
    s.add_argument("--h", type=int, default=None,
                   help="print only the number of h-faces")
    s.add_argument("--edges", action="store_true",
                   help="also list oriented edges with their classes")
    s.set_defaults(func=cmd_skeleton)

    c = sub.add_parser("check", help="decide conservativity of a skeleton file")
    c.add_argument("skeleton_file")
    c.add_argument("--mixture", default=None,
                   help="validate edge arrows against this mixture file")
    c.add_argument("--tol", type=float, default=None)
    c.add_argument("--out", default=None, help="write the JSON report here")
    c.set_defaults(func=cmd_check)

    u = sub.add_parser("uniformity", help="core transitivity verdict for a mixture")
    u.add_argument("mixture_file")
    u.add_argument("--out", default=None, help="write the JSON report here")
    u.set_defaults(func=cmd_uniformity)

    g = sub.add_parser("generate", help="write a random skeleton file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--mode", choices=("conservative", "perturbed"),
                   default="conservative")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None, help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify-theorem",
                       help="sweep both conservativity checkers for agreement")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None)
    v.set_defaults(func=cmd_verify_theorem)

    co = sub.add_parser("compose",
                        help="compose two skeleton files along an axis "
                             "(first argument is traversed first)")
    co.add_argument("first")
    co.add_argument("second")
    co.add_argument("--axis", type=int, required=True)
    co.add_argument("--tol", type=float, default=None)
    co.add_argument("--out", default=None, help="output path (default stdout)")
    co.set_defaults(func=cmd_compose)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except FormatError as exc:
        return _fail(str(exc))
    except NGroupoidError as exc:
        return _fail(str(exc))


def entry_point() -> None:
    sys.exit(main())
