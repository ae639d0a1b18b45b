"""Command-line front end.

Every command reads canonical JSON instance files, never crashes on
malformed input (structured parse errors carry location context), and is
deterministic: identical inputs and flags produce byte-identical output.
Exit codes: 0 success / all checks pass, 1 a mathematical check failed,
2 malformed input or usage error.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import io
from .algebra import check_dgbv_axioms
from .frobenius import (check_cubic_identity, check_identity_axiom,
                        check_wdvv, potential)
from .geometry import PolyvectorField, build_torus_model
from .homology import (IntegralNotNiceError, check_conditions, check_integral,
                       cohomology, decomposition, metric_eta)
from .mc import (Obstruction, gauge_act, random_gauge_parameter, renormalize,
                 solve_mc, NormalizedSolution)
from .morphism import check_quasi_iso, compare_potentials
from .reports import Report


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _emit(args, payload, human_text=None):
    if getattr(args, "human", False) and human_text is not None:
        print(human_text)
    else:
        print(json.dumps(payload, indent=1, default=str))


def _load(path):
    try:
        return io.load_instance(path)
    except io.FormatError as e:
        raise CliError(str(e)) from None
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _reports_payload(reports):
    return {"ok": all(r.ok for r in reports),
            "reports": [r.to_dict() for r in reports]}


def cmd_validate(args):
    A = _load(args.file)
    reports = [check_dgbv_axioms(A)]
    if A.integral is not None:
        reports.append(check_integral(A))
    reports.append(check_conditions(A))
    payload = _reports_payload(reports)
    payload["instance"] = A.name
    _emit(args, payload, "\n\n".join(r.summary() for r in reports))
    return 0 if payload["ok"] else 1


def cmd_cohomology(args):
    A = _load(args.file)
    try:
        H = cohomology(A, args.operator)
    except ValueError as e:
        raise CliError(str(e), code=1) from None
    payload = {
        "instance": A.name,
        "operator": args.operator,
        "betti": {str(k): v for k, v in sorted(H.betti.items())},
        "representatives": [
            {"index": a, "degree": H.degrees[a],
             "element": {H.space.label_of(i): io.format_rational(c)
                         for i, c in sorted(H.reps[a].coeffs.items())}}
            for a in range(H.rank)],
        "unit_class": H.unit_index,
    }
    lines = [f"H({A.name}, {args.operator}): betti {dict(sorted(H.betti.items()))}"]
    for a in range(H.rank):
        lines.append(f"  e_{a} (degree {H.degrees[a]}) = {H.reps[a]!r}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _pipeline(A, order, force=False):
    conditions = check_conditions(A)
    if not conditions.ok and not force:
        raise CliError(
            "instance fails the construction conditions; rerun with --force:\n"
            + conditions.summary(), code=1)
    D = decomposition(A)
    S = solve_mc(A, D, order, force=force)
    return conditions, D, S


def cmd_solve(args):
    A = _load(args.file)
    _, D, S = _pipeline(A, args.order, args.force)
    if isinstance(S, Obstruction):
        payload = {
            "instance": A.name, "order": args.order,
            "obstruction": {
                "order": S.order,
                "classes": {S.harmonic.ring.mono_str(m):
                            [io.format_rational(c) for c in coords]
                            for m, coords in S.classes.items()}}}
        _emit(args, payload,
              f"obstruction at order {S.order}: {payload['obstruction']['classes']}")
        return 0
    payload = {"instance": A.name, "order": args.order,
               "gamma": io.series_to_dict(S.gamma),
               "b": io.series_to_dict(S.b_series)}
    _emit(args, payload,
          f"Gamma = {S.gamma!r}\nB = {S.b_series!r}")
    return 0


def cmd_potential(args):
    A = _load(args.file)
    _, D, S = _pipeline(A, args.order, args.force)
    if isinstance(S, Obstruction):
        raise CliError(f"obstruction at order {S.order}; no potential", code=1)
    P = potential(A, S, args.order + 2)
    payload = {"instance": A.name, "order": P.order,
               "coordinates": {f"x{a}": {"degree": P.ring.degrees[a],
                                         "class_degree": D.cohomology.degrees[a]}
                               for a in range(P.ring.nvars)},
               "potential": io.polynomial_to_dict(P.poly)}
    _emit(args, payload, f"Phi = {P.poly!r}")
    return 0


def cmd_wdvv(args):
    A = _load(args.file)
    conditions, D, S = _pipeline(A, args.order, args.force)
    if isinstance(S, Obstruction):
        raise CliError(f"obstruction at order {S.order}; no potential", code=1)
    P = potential(A, S, args.order + 2)
    try:
        eta = metric_eta(A, D.cohomology)
    except (ValueError, IntegralNotNiceError) as e:
        raise CliError(str(e), code=1) from None
    reports = [check_wdvv(P, eta), check_identity_axiom(P, eta)]
    cubic = Report("cubic contraction identity (all coordinate directions)")
    fails = []
    for a in range(P.ring.nvars):
        r = check_cubic_identity(A, S, P, {a: Fraction(1)})
        if not r.ok:
            fails.append((f"x{a}",))
    cubic.add("triple_contraction_matches_cube", fails)
    reports.append(cubic)
    payload = _reports_payload(reports)
    payload["instance"] = A.name
    payload["potential"] = io.polynomial_to_dict(P.poly)
    _emit(args, payload, "\n\n".join(r.summary() for r in reports))
    return 0 if payload["ok"] else 1


def cmd_gauge_test(args):
    A = _load(args.file)
    _, D, S = _pipeline(A, args.order, args.force)
    if isinstance(S, Obstruction):
        raise CliError(f"obstruction at order {S.order}", code=1)
    P = potential(A, S, args.order + 2)
    rng = random.Random(args.seed)
    trials = []
    ok = True
    moved = 0
    for t in range(args.count):
        g = random_gauge_parameter(A, S.ring, rng)
        gauged = gauge_act(A, g, S.gamma, args.order)
        if not (gauged - S.gamma).is_zero():
            moved += 1
        B2 = renormalize(A, gauged, S.gamma.part(1))
        S2 = NormalizedSolution(A, D, S.ring, gauged, B2, S.order)
        P2 = potential(A, S2, P.order)
        same = (P2.poly - P.poly).is_zero()
        ok = ok and same
        trials.append({"trial": t, "gauge_terms": len(g.coeffs),
                       "moved_solution": not (gauged - S.gamma).is_zero(),
                       "potential_invariant": same})
    payload = {"instance": A.name, "seed": args.seed, "ok": ok,
               "moved": moved, "trials": trials}
    _emit(args, payload,
          f"gauge invariance: {'ok' if ok else 'FAILED'} "
          f"({args.count} trials, solution moved in {moved})")
    return 0 if ok else 1


def _parse_bivector(spec, dim):
    """'1,2:1;3,4:-1/2' -> sum of coefficient * d_i ^ d_j (1-based)."""
    w = PolyvectorField.zero(dim)
    zero_exp = tuple([0] * dim)
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            idx, coeff = chunk.split(":")
            i, j = (int(x) for x in idx.split(","))
        except ValueError:
            raise CliError(f"bad bivector chunk {chunk!r}; "
                           "expected 'i,j:coeff'") from None
        if not (1 <= i <= dim and 1 <= j <= dim) or i == j:
            raise CliError(f"bivector indices out of range in {chunk!r}")
        c = io.parse_rational(coeff, "bivector")
        if i > j:
            i, j = j, i
            c = -c
        w = w + PolyvectorField.monomial(dim, c, zero_exp, (i - 1, j - 1))
    return w


def cmd_build(args):
    if args.what != "torus":
        raise CliError(f"unknown builder {args.what!r}; available: torus")
    w = _parse_bivector(args.poisson, args.dim) if args.poisson else None
    try:
        A = build_torus_model(args.dim, w)
    except (ValueError, ArithmeticError) as e:
        raise CliError(str(e)) from None
    sys.stdout.write(io.instance_to_json(A))
    return 0


def cmd_compare(args):
    A = _load(args.fileA)
    B = _load(args.fileB)
    try:
        m = io.load_morphism(args.morphism, A, B)
    except io.FormatError as e:
        raise CliError(str(e)) from None
    q = check_quasi_iso(m)
    reports = [q]
    if q.ok:
        try:
            comparison = compare_potentials(m, args.order)
        except (ValueError, ArithmeticError) as e:
            raise CliError(str(e), code=1) from None
        reports.append(comparison)
    payload = _reports_payload(reports)
    payload["source"] = A.name
    payload["target"] = B.name
    _emit(args, payload, "\n\n".join(r.summary() for r in reports))
    return 0 if payload["ok"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dgbv",
        description="Exact checks and constructions for differential "
                    "GBV algebras over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--human", action="store_true",
                       help="pretty text instead of JSON")
        return p

    p = add("validate", cmd_validate, help="axioms, integral and conditions")
    p.add_argument("file")

    p = add("cohomology", cmd_cohomology, help="Betti numbers and representatives")
    p.add_argument("file")
    p.add_argument("--operator", choices=["delta", "bv"], default="delta")

    for name, fn, hlp in [("solve", cmd_solve, "normalized Maurer-Cartan solution"),
                          ("potential", cmd_potential, "potential function"),
                          ("wdvv", cmd_wdvv, "potential plus associativity checks")]:
        p = add(name, fn, help=hlp)
        p.add_argument("file")
        p.add_argument("--order", type=int, required=True)
        p.add_argument("--force", action="store_true",
                       help="run even if the construction conditions fail")

    p = add("gauge-test", cmd_gauge_test, help="potential gauge invariance")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--force", action="store_true")

    p = add("build", cmd_build, help="emit a model instance file")
    p.add_argument("what", choices=["torus"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--poisson", default=None,
                   help="constant bivector, e.g. '1,2:1;3,4:-1/2'")

    p = add("compare", cmd_compare,
            help="morphism checks plus potential comparison")
    p.add_argument("fileA")
    p.add_argument("fileB")
    p.add_argument("--morphism", required=True)
    p.add_argument("--order", type=int, required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
