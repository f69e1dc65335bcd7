"""Command line front end.

Functionals are read in flag coordinates unless --defining-basis is given.
Exit codes: 0 ok, 1 usage, 2 invalid input, 3 internal invariant violated,
4 openness violation in a report.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import catalog
from .chain import OpennessConfig, SamplingConfig, solvability_report
from .files import (
    ParseError,
    dumps,
    flag_to_json,
    fstr,
    label_to_json,
    load_algebra,
    report_to_json,
    subspace_to_json,
    vec_to_json,
)
from .lie import FlagNotFound, JacobiViolation, LieAlgebraError
from .linalg import to_scalar
from .orbits import ZeroingStepUnsolvable, nilpotent_cross_section
from .polarize import (
    InvariantViolation,
    check_polarization,
    descending_sequence,
    pukanszky_containment_check,
)
from .stratify import classify

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INVARIANT, EXIT_OPENNESS = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputError(ValueError):
    pass


def parse_functional(text: str, m: int) -> tuple:
    parts = [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != m:
        raise InputError(f"functional has {len(parts)} coordinates, the algebra has dimension {m}")
    out = []
    for p in parts:
        if any(c in p for c in ".eE") and "/" not in p:
            raise InputError(f"coordinate {p!r}: give rationals as integers or p/q")
        try:
            out.append(to_scalar(p))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"coordinate {p!r} is not a rational number ({exc})") from None
    return tuple(out)


def _say(args, text: str) -> None:
    if args.verbose:
        print(text, file=sys.stderr)


def _functional(args, flag) -> tuple:
    xi = parse_functional(args.xi, flag.dim)
    if args.defining_basis:
        xi = flag.functional_from_defining(xi)
    return xi


def cmd_check(args) -> int:
    spec = load_algebra(args.path)
    alg = spec.algebra
    doc = {"name": alg.name, "dim": alg.dim, "basis": list(alg.basis_names)}
    try:
        flag = spec.jh_flag()
    except FlagNotFound as exc:
        doc.update(classification="flag not found", detail=str(exc))
        print(dumps(doc))
        _say(args, f"{alg.name}: no rational flag found")
        return EXIT_OK
    nilpotent = alg.is_nilpotent
    doc.update(
        classification="nilpotent" if nilpotent else "completely solvable",
        flag=dict(flag_to_json(flag), source="declared" if spec.flag is not None else "found"),
        roots=[vec_to_json(r) for r in flag.roots],
        root_values=[{name: fstr(c) for name, c in zip(flag.names, r)} for r in flag.roots],
    )
    print(dumps(doc))
    _say(args, f"{alg.name}: {doc['classification']}, flag ({', '.join(flag.names)})")
    return EXIT_OK


def cmd_layer(args) -> int:
    flag = load_algebra(args.path).jh_flag()
    xi = _functional(args, flag)
    c = classify(flag, xi)
    print(dumps(label_to_json(c.label, c.fine_index)))
    _say(args, f"orbit dimension {2 * c.trace.d}")
    return EXIT_OK


def cmd_polarize(args) -> int:
    flag = load_algebra(args.path).jh_flag()
    xi = _functional(args, flag)
    trace = descending_sequence(flag, xi)
    p = trace.polarization
    checks = check_polarization(flag, xi, p)
    doc = {
        "xi": vec_to_json(xi),
        "coordinates": "flag",
        "polarization": subspace_to_json(p),
        "dim": p.dim,
        "trace": {"d": trace.d, "chain": [subspace_to_json(s) for s in trace.chain],
                  "i": list(trace.i), "j": list(trace.j)},
        "checks": {"subalgebra": checks.is_subalgebra, "isotropic": checks.is_isotropic,
                   "dimension": checks.has_polarization_dimension,
                   "contains_stabilizer": checks.contains_stabilizer},
    }
    if args.pukanszky:
        rep = pukanszky_containment_check(flag, xi, p, samples=args.pukanszky,
                                          tolerance=args.tolerance, seed=args.seed)
        doc["pukanszky"] = {"samples": rep.samples, "exact": rep.exact,
                            "max_residual": rep.max_residual, "approximate": not rep.exact,
                            "tolerance": rep.tolerance, "orbit_tangent_dim": rep.orbit_tangent_dim,
                            "annihilator_dim": rep.annihilator_dim, "ok": rep.ok}
    print(dumps(doc))
    if not checks.ok:
        raise InvariantViolation("the computed subspace is not a polarization")
    if args.pukanszky and not doc["pukanszky"]["ok"]:
        raise InvariantViolation("containment check failed")
    return EXIT_OK


def cmd_orbit_rep(args) -> int:
    flag = load_algebra(args.path).jh_flag()
    xi = _functional(args, flag)
    rep = nilpotent_cross_section(flag, xi)
    doc = {
        "xi": vec_to_json(xi),
        "coordinates": "flag",
        "representative": vec_to_json(rep.representative),
        "word": [{"index": a + 1, "name": flag.names[a], "t": fstr(t)}
                 for a, t in rep.word.factors],
        "zeroed": list(rep.zeroed),
    }
    if args.defining_basis:
        doc["representative_defining"] = vec_to_json(
            flag.functional_to_defining(rep.representative))
    print(dumps(doc))
    return EXIT_OK


def cmd_report(args) -> int:
    spec = load_algebra(args.path)
    flag = spec.jh_flag()
    sampling = SamplingConfig(samples=args.samples, seed=args.seed)
    openness = OpennessConfig(depth=args.perturb, seed=args.seed)
    report = solvability_report(flag, sampling, openness, spec.known_length)
    print(dumps(report_to_json(report)))
    _say(args, f"{flag.algebra.name}: chain_length {report.chain_length}, "
               f"{report.openness.checked} openness probes, "
               f"{len(report.openness.violations)} violations")
    return EXIT_OK if report.openness.ok else EXIT_OPENNESS


def cmd_catalog(args) -> int:
    print("\n".join(catalog.NAMES))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="summary on stderr")
    common.add_argument("--defining-basis", action="store_true",
                        help="read functionals in the defining basis instead of flag coordinates")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, default=1e-9,
                        help="tolerance for floating point checks on non-nilpotent algebras")

    parser = _Parser(prog="ultrafine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="validate an algebra and its flag")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    for name, func, helptext in (("layer", cmd_layer, "ultrafine label of a functional"),
                                 ("polarize", cmd_polarize, "polarization and its recursion"),
                                 ("orbit-rep", cmd_orbit_rep, "orbit cross-section point")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("path")
        p.add_argument("xi", help='comma separated rationals, e.g. "1,0,-1/2"')
        if name == "polarize":
            p.add_argument("--pukanszky", type=int, default=0, metavar="N",
                           help="also sample N elements for the containment check")
        p.set_defaults(func=func)

    p = sub.add_parser("report", parents=[common], help="layers, ordering and openness")
    p.add_argument("path")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--perturb", type=int, default=20, help="depth of the openness perturbations")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("catalog", parents=[common], help="list built-in algebras")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except JacobiViolation as exc:
        print(f"invalid algebra: {exc}", file=sys.stderr)
        print(f"triple: {', '.join(exc.triple)}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, InputError, LieAlgebraError, FlagNotFound,
            ZeroingStepUnsolvable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
