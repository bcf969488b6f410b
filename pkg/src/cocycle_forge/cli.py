"""Command-line front end.

Subcommands: validate, killing, cartan, rmatrix, lift, table, verify.
Results go to stdout (TSV or JSON with sorted keys, deterministic order);
progress lines go to stderr.  Exit code 0 means every requested check passed,
1 means failure rows, 2 means a load or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import combinations

from .foundations import FreeCombo, rat
from .lie_core import (
    BUILTIN_ALGEBRAS,
    LieAlgebra,
    algebra_from_dict,
    cartan_cocycle,
    check_invariant_form,
    cochain3_from_dict,
    killing_form,
    standard_r_matrix,
    tensor2_from_dict,
    validate_jacobi,
)
from .enveloping import PBWAlgebra, format_monomial, hopf_suite, parse_word
from .homotopy import EulerianHomotopy, identity_suite
from .lifting import SL2_PAIRS, CocycleLift, check_vanishing
from .representative import AbelianRepresentative, casimir_uniqueness_check
from .report import failures_to_json, stderr_progress

ENV_MAX_DEGREE = "COCYCLE_FORGE_MAX_DEGREE"


class CliError(Exception):
    pass


def load_algebra(args) -> LieAlgebra:
    if args.builtin:
        try:
            return BUILTIN_ALGEBRAS[args.builtin]()
        except KeyError:
            raise CliError("unknown builtin %r (have: %s)"
                           % (args.builtin, ", ".join(sorted(BUILTIN_ALGEBRAS)))) from None
    if not args.algebra:
        raise CliError("need --algebra FILE or --builtin NAME")
    try:
        with open(args.algebra, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise CliError("cannot read algebra file: %s" % exc) from None
    except json.JSONDecodeError as exc:
        raise CliError("malformed algebra file: %s" % exc) from None
    try:
        return algebra_from_dict(data)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def load_cocycle(L: LieAlgebra, spec: str):
    if spec == "cartan":
        try:
            return cartan_cocycle(L, killing_form(L))
        except ValueError as exc:
            raise CliError("cannot build the Cartan cocycle: %s" % exc) from None
    try:
        with open(spec, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise CliError("cannot read cocycle file: %s" % exc) from None
    except json.JSONDecodeError as exc:
        raise CliError("malformed cocycle file: %s" % exc) from None
    try:
        return cochain3_from_dict(L, data)
    except ValueError as exc:
        raise CliError("cocycle file not antisymmetric: %s" % exc) from None


def load_rmatrix(L: LieAlgebra, path):
    if path:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
            return tensor2_from_dict(L, data)
        except OSError as exc:
            raise CliError("cannot read r-matrix file: %s" % exc) from None
        except (json.JSONDecodeError, ValueError) as exc:
            raise CliError("malformed r-matrix file: %s" % exc) from None
    try:
        return standard_r_matrix(L, killing_form(L))
    except ValueError:
        if L.is_abelian():
            # any symmetric tensor is invariant and compatible here
            return FreeCombo({(i, i): 1 for i in range(L.dim)})
        raise CliError("the Killing form is degenerate; supply --rmatrix-file") from None


def default_degree(args, fallback: int) -> int:
    if args.max_degree is not None:
        return args.max_degree
    env = os.environ.get(ENV_MAX_DEGREE)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError("bad %s value %r" % (ENV_MAX_DEGREE, env)) from None
    return fallback


def cmd_validate(args) -> int:
    if args.builtin:
        L = load_algebra(args)
        print("ok: %s (dim %d) satisfies the Jacobi identity" % (L.name, L.dim))
        return 0
    # load without the constructor guard so the report carries the triples
    try:
        with open(args.algebra, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(str(exc)) from None
    try:
        probe = algebra_from_dict({**data, "brackets": data.get("brackets", [])})
    except ValueError as exc:
        message = str(exc)
        if "Jacobi" not in message:
            raise CliError(message) from None
        raw = dict(data)
        name = raw.get("name", "algebra")
        basis = tuple(raw["basis"])
        structure = {}
        for entry in raw.get("brackets", []):
            structure[(int(entry["i"]), int(entry["j"]))] = FreeCombo(
                {int(term["k"]): rat(term["c"]) for term in entry.get("terms", [])})
        unchecked = LieAlgebra(name, basis, structure, check=False)
        for triple in validate_jacobi(unchecked):
            print("jacobi failure on basis triple %s" % (triple,))
        return 1
    print("ok: %s (dim %d) satisfies the Jacobi identity" % (probe.name, probe.dim))
    return 0


def cmd_killing(args) -> int:
    L = load_algebra(args)
    form = killing_form(L)
    print("\t".join([""] + list(L.basis)))
    for i in range(L.dim):
        print("\t".join([L.basis[i]] + [str(form.entry(i, j)) for j in range(L.dim)]))
    return 0


def cmd_cartan(args) -> int:
    L = load_algebra(args)
    form = killing_form(L)
    bad = check_invariant_form(L, form)
    if bad:
        raise CliError("Killing form is not invariant?! first failing triple %s" % (bad[0],))
    cocycle = cartan_cocycle(L, form)
    print("g1\tg2\tg3\tvalue")
    for i, j, k in combinations(range(L.dim), 3):
        print("%s\t%s\t%s\t%s" % (L.basis[i], L.basis[j], L.basis[k], cocycle.on_indices((i, j, k))))
    return 0


def cmd_rmatrix(args) -> int:
    L = load_algebra(args)
    try:
        r = standard_r_matrix(L, killing_form(L))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print("i\tj\tvalue")
    for (i, j) in sorted(r.keys()):
        print("%s\t%s\t%s" % (L.basis[i], L.basis[j], r.coeff((i, j))))
    return 0


def cmd_lift(args) -> int:
    L = load_algebra(args)
    cocycle = load_cocycle(L, args.cocycle)
    lift = CocycleLift(L, cocycle)
    U = lift.U
    try:
        word = parse_word(L, args.x)
        g1 = L.element_by_name(args.g1)
        g2 = L.element_by_name(args.g2)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc)) from None
    x = U.straighten_word(word)
    print(lift.value(x, g1, g2))
    return 0


def cmd_table(args) -> int:
    L = load_algebra(args)
    cocycle = load_cocycle(L, args.cocycle)
    lift = CocycleLift(L, cocycle)
    max_degree = default_degree(args, 4)

    if args.pairs:
        tables = []
        for name in args.pairs.split(","):
            name = name.strip()
            if name not in SL2_PAIRS:
                raise CliError("unknown pair name %r (expected XY, XH or YH)" % name)
            try:
                tables.append(lift.sl2_table(name, max_degree))
            except ValueError as exc:
                raise CliError(str(exc)) from None
        if args.format == "json":
            payload = []
            for table in tables:
                rows = [{"a": a, "b": b, "c": c, "value": str(v)}
                        for (a, b, c), v in table.sorted_items()]
                violations = check_vanishing(table)
                payload.append({"pair": table.pair, "max_degree": table.max_degree,
                                "entries": rows,
                                "vanishing": "pass" if not violations else "fail"})
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            for table in tables:
                print("# pair %s" % table.pair)
                print("a\tb\tc\tvalue")
                for (a, b, c), v in table.sorted_items():
                    print("%d\t%d\t%d\t%s" % (a, b, c, v))
                violations = check_vanishing(table)
                print("# vanishing %s: %s" % (table.pair, "pass" if not violations else "FAIL (%d rows)" % len(violations)))
        return 0

    if not (args.g1 and args.g2):
        raise CliError("need --pairs for sl2 or --g1/--g2 basis names")
    g1 = L.element_by_name(args.g1)
    g2 = L.element_by_name(args.g2)
    from .enveloping import mono_degree, monomials_up_to

    monos = [m for m in monomials_up_to(L.dim, max_degree) if mono_degree(m) >= 1]
    if args.format == "json":
        rows = [{"monomial": format_monomial(L, m),
                 "value": str(lift.value(FreeCombo.single(m), g1, g2))} for m in monos]
        print(json.dumps(rows, sort_keys=True, indent=2))
    else:
        print("\t".join(list(L.basis) + ["value"]))
        for m in monos:
            value = lift.value(FreeCombo.single(m), g1, g2)
            print("\t".join([str(e) for e in m] + [str(value)]))
    return 0


SUITES = ("hopf", "homotopy", "lift", "compat", "quasi", "all")


def cmd_verify(args) -> int:
    L = load_algebra(args)
    if args.suite not in SUITES:
        raise CliError("unknown suite %r (have: %s)" % (args.suite, ", ".join(SUITES)))
    progress = stderr_progress(sys.stderr)
    failures = []
    wants = lambda name: args.suite in (name, "all")

    if wants("hopf"):
        degree = default_degree(args, 4)
        failures += hopf_suite(PBWAlgebra(L), degree, progress=progress)
    if wants("homotopy"):
        degree = default_degree(args, 4)
        failures += identity_suite(EulerianHomotopy(PBWAlgebra(L)), degree, progress=progress)

    lift = None
    if wants("lift") or wants("compat") or wants("quasi"):
        cocycle = load_cocycle(L, args.cocycle)
        lift = CocycleLift(L, cocycle)
    if wants("lift"):
        degree = default_degree(args, 4)
        failures += lift.verify_coboundary(degree, progress=progress)
    if wants("compat") or wants("quasi"):
        r = load_rmatrix(L, args.rmatrix_file)
        try:
            rep = AbelianRepresentative(lift, r)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if wants("compat"):
            degree = default_degree(args, 4)
            failures += rep.compat_check(degree, progress=progress)
        if wants("quasi"):
            degree = default_degree(args, 3)
            failures += rep.verify_quasi_invariance(degree, progress=progress)

    print(failures_to_json(failures))
    return 0 if not failures else 1


def cmd_casimir(args) -> int:
    L = load_algebra(args)
    try:
        failures = casimir_uniqueness_check(L, killing_form(L))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(failures_to_json(failures))
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cocycle-forge",
        description="Exact cocycle lifting and quasi-invariant tensors for "
                    "finite-dimensional Lie algebras over the rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algebra", help="algebra definition file (JSON)")
        p.add_argument("--builtin", help="built-in algebra: %s" % ", ".join(sorted(BUILTIN_ALGEBRAS)))

    p = sub.add_parser("validate", help="load an algebra and check the Jacobi identity")
    common(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("killing", help="print the Killing form matrix")
    common(p)
    p.set_defaults(handler=cmd_killing)

    p = sub.add_parser("cartan", help="print the Cartan 3-cocycle of the Killing form")
    common(p)
    p.set_defaults(handler=cmd_cartan)

    p = sub.add_parser("rmatrix", help="print the standard r-matrix of the Killing form")
    common(p)
    p.set_defaults(handler=cmd_rmatrix)

    p = sub.add_parser("lift", help="evaluate the lifted 2-cochain")
    common(p)
    p.add_argument("--x", required=True, help="enveloping monomial, e.g. 'X Y' or 'X^2*H' or '1'")
    p.add_argument("--g1", required=True, help="first Lie slot (basis name)")
    p.add_argument("--g2", required=True, help="second Lie slot (basis name)")
    p.add_argument("--cocycle", default="cartan", help="'cartan' or a cocycle file")
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser("table", help="tabulate lift values over PBW monomials")
    common(p)
    p.add_argument("--pairs", help="comma-separated sl2 pair names among XY,XH,YH")
    p.add_argument("--g1", help="first Lie slot for general algebras")
    p.add_argument("--g2", help="second Lie slot for general algebras")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--cocycle", default="cartan")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", default="all", help="|".join(SUITES))
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--cocycle", default="cartan")
    p.add_argument("--rmatrix-file", help="r-matrix JSON (default: standard r-matrix)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("casimir", help="check unique symmetric lifting of the Casimir element")
    common(p)
    p.set_defaults(handler=cmd_casimir)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
