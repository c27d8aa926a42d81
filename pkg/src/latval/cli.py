"""latval command line: compute invariants, run verification suites, emit
decompositions.  All numbers in JSON output are strings.

Exit codes: 0 ok, 1 a suite failed, 2 parse error, 3 validation error,
4 incompatible or unknown request.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import decompositions as dec
from .ehrhart import count, discrete_moment, discrete_steiner, ehrhart, moment_expansion
from .exact import fmt, parse
from .operators import contra_z_ab_2d, difference_body, projection_body, z_ab
from .polytope import Polytope, centroid, facet_system
from .suites import ALL, SUITES, run_suites

EXIT_FAIL, EXIT_PARSE, EXIT_INVALID, EXIT_INCOMPATIBLE = 1, 2, 3, 4

INVARIANTS = ("count", "moment", "ehrhart", "moment-expansion", "dst", "difference-body",
              "z-ab", "projection-body", "contra-z-ab-2d", "centroid", "facet-system")
_NEEDS_LATTICE = {"ehrhart", "moment-expansion", "dst", "z-ab", "contra-z-ab-2d"}
DECOMPOSITIONS = ("corner", "prism", "cube", "grid")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _vec(v):
    return [fmt(x) for x in v]


def load_polytope(path: str) -> Polytope:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        data = json.loads(text)
        verts = [[parse(x) for x in v] for v in data["vertices"]]
        n = int(data["dim"])
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CliError(EXIT_PARSE, f"cannot parse {path}: {exc!r}")
    if not verts:
        raise CliError(EXIT_INVALID, "polytope has no vertices")
    if n < 1 or any(len(v) != n for v in verts):
        raise CliError(EXIT_INVALID, "vertex length does not match 'dim'")
    return Polytope(verts)


def _param(args, name):
    raw = getattr(args, name)
    if raw is None:
        raise CliError(EXIT_INCOMPATIBLE, f"--{name} is required for {args.invariant}")
    try:
        value = parse(raw)
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_PARSE, f"cannot parse --{name} {raw!r}")
    if value < 0:
        raise CliError(EXIT_INVALID, f"--{name} must be nonnegative")
    return value


def compute(P: Polytope, invariant: str, args) -> dict:
    if invariant not in INVARIANTS:
        raise CliError(EXIT_INCOMPATIBLE, f"unknown invariant {invariant!r}")
    if invariant in _NEEDS_LATTICE and not P.is_lattice:
        raise CliError(EXIT_INVALID, f"{invariant} needs a lattice polytope")
    if invariant == "contra-z-ab-2d" and P.n != 2:
        raise CliError(EXIT_INCOMPATIBLE, "contra-z-ab-2d needs ambient dimension 2")
    if invariant == "count":
        return {"count": fmt(count(P))}
    if invariant == "moment":
        return {"moment": _vec(discrete_moment(P))}
    if invariant == "ehrhart":
        return ehrhart(P).to_json()
    if invariant == "moment-expansion":
        return moment_expansion(P).to_json()
    if invariant == "dst":
        return {"dst": _vec(discrete_steiner(P))}
    if invariant == "centroid":
        return {"centroid": _vec(centroid(P))}
    if invariant == "facet-system":
        return {"facet-system": facet_system(P).to_json()}
    if invariant == "difference-body":
        out = difference_body(P)
    elif invariant == "z-ab":
        out = z_ab(P, _param(args, "a"), _param(args, "b"))
    elif invariant == "projection-body":
        c = Fraction(1) if args.c is None else _param(args, "c")
        out = c * projection_body(P)
    else:
        out = contra_z_ab_2d(P, _param(args, "a"), _param(args, "b"))
    return {invariant: out.to_json()}


def cmd_compute(args) -> tuple[int, object]:
    P = load_polytope(args.polytope)
    return 0, compute(P, args.invariant, args)


def cmd_verify(args) -> tuple[int, object]:
    names = ALL if args.suite == "all" else tuple(args.suite.split(","))
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise CliError(EXIT_INCOMPATIBLE, f"unknown suite {unknown[0]!r}; "
                                          f"choose from all, {', '.join(SUITES)}")
    if args.dim < 2:
        raise CliError(EXIT_INCOMPATIBLE, "--dim must be at least 2")
    if args.trials is not None and args.trials < 0:
        raise CliError(EXIT_INVALID, "--trials must be nonnegative")
    reports = run_suites(names, args.dim, args.seed, args.trials)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    passed = all(r.passed for r in reports)
    doc = {"dim": args.dim, "seed": str(args.seed), "passed": passed,
           "reports": [r.to_json() for r in reports]}
    return (0 if passed else EXIT_FAIL), doc


def cmd_decomp(args) -> tuple[int, object]:
    if args.name not in DECOMPOSITIONS:
        raise CliError(EXIT_INCOMPATIBLE, f"unknown decomposition {args.name!r}; "
                                          f"choose from {', '.join(DECOMPOSITIONS)}")
    if args.dim < 2:
        raise CliError(EXIT_INCOMPATIBLE, "--dim must be at least 2")
    if args.name == "corner":
        return 0, dec.corner_split(args.dim).to_json()
    if args.name == "prism":
        D = dec.prism_triangulation(args.dim)
    elif args.name == "cube":
        D = dec.cube_triangulation(args.dim)
    else:
        if args.k < 1:
            raise CliError(EXIT_INCOMPATIBLE, "--k must be at least 1")
        D = dec.grid_decomposition(args.dim, args.k)
    return 0, D.to_json()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS,
                        help="write the JSON result to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="latval", parents=[common],
                                description="Lattice polytope valuations, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute an invariant of a polytope")
    c.add_argument("polytope", help="polytope JSON file, or - for stdin")
    c.add_argument("invariant", help=", ".join(INVARIANTS))
    for name in ("a", "b", "c"):
        c.add_argument(f"--{name}", help="operator parameter as p/q")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all",
                   help="suite name, comma separated names, or all: " + ", ".join(SUITES))
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--trials", type=int)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decomp", parents=[common], help="emit a cell decomposition")
    d.add_argument("name", help=", ".join(DECOMPOSITIONS))
    d.add_argument("--dim", type=int, default=2)
    d.add_argument("--k", type=int, default=2, help="grid size")
    d.set_defaults(func=cmd_decomp)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    args.seed = getattr(args, "seed", 0)
    out_path = getattr(args, "json", None)
    try:
        code, doc = args.func(args)
    except CliError as exc:
        print(f"latval: {exc}", file=sys.stderr)
        return exc.code
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
