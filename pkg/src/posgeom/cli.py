"""Command-line front end: ``posgeom {symanzik,cosmo,dmod,euler,grass}``.

Canonical text goes to stdout (``--json`` switches to JSON); ``--out`` writes
a JSON document holding a run manifest and the results.  Exit codes: 0 ok,
2 usage error or unknown subcommand, 3 malformed input, 4 mathematical error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import InputError, PosgeomError
from .poly import as_fraction, format_fraction

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_MATH = 4


class _Run:
    """Collects inputs and options for the manifest."""

    def __init__(self, command):
        self.command = command
        self.inputs = {}
        self.options = {}

    def read(self, path, role) -> str:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read file: {exc.strerror}", source=path) from None
        self.inputs[role] = {"name": p.name, "sha256": hashlib.sha256(data).hexdigest()}
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            raise InputError("file is not UTF-8 text", source=path) from None

    def json(self, path, role):
        text = self.read(path, role)
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=path) from None

    def manifest(self, outputs) -> dict:
        return {
            "command": self.command,
            "version": __version__,
            "inputs": self.inputs,
            "options": self.options,
            "outputs": outputs,
        }


def _fmt(x):
    return format_fraction(x) if isinstance(x, Fraction) else str(x)


def _csv(text, role):
    if text is None:
        return None
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise InputError(f"empty entry in --{role}")
        if item.isidentifier():
            out.append(item)
        else:
            out.append(as_fraction(item))
    return out


# ---------------------------------------------------------------------------
# subcommands; each returns (text lines, json-able dict)


def _load_graph(run, path):
    from .graphs import diagram_from_json

    return diagram_from_json(run.json(path, "graph"), source=path)


def cmd_symanzik(args, run):
    from .symanzik import Kinematics, first_symanzik, graph_polynomial, lp_integrand, second_symanzik

    g = _load_graph(run, args.graph)
    if args.kinematics:
        k = Kinematics.from_json(run.json(args.kinematics, "kinematics"), g,
                                 numeric=args.numeric, source=args.kinematics)
    else:
        k = Kinematics(default_zero=args.numeric)
    run.options.update(numeric=args.numeric)
    u = first_symanzik(g)
    lines = [f"U = {u}"]
    out = {"U": str(u), "U_json": u.to_json()}
    if g.n_vertices >= 2:
        f = second_symanzik(g, k)
        lines.append(f"F = {f}")
        out.update(F=str(f), F_json=f.to_json())
    G = graph_polynomial(g, k)
    lines.append(f"G = {G}")
    out["G"] = str(G)
    nu = _csv(args.nu, "nu")
    run.options.update(nu=[_fmt(x) for x in nu] if nu else None, D=args.dim)
    lp = lp_integrand(g, k, nu, args.dim)
    out["lee_pomeransky"] = lp.to_json()
    return lines, out


def cmd_cosmo(args, run):
    from .cosmo import (
        adjoint_numerator, build_cone, canonical_form, cosmo_integrand, energy_coords,
        facet_forms, shifted_factored,
    )

    g = _load_graph(run, args.graph)
    action = args.action
    run.options.update(action=action)
    vars = energy_coords(g).vars
    if action == "facets":
        lines, rows = [], []
        for form, subs in facet_forms(g):
            srcs = ["{" + ",".join(h.sub_vertices) + "}" for h in subs]
            lines.append(f"{form}    # {' '.join(srcs)}")
            rows.append({"form": str(form), "subgraphs": [
                {"vertices": list(h.sub_vertices), "edges": list(h.sub_edges)} for h in subs]})
        return lines, {"vars": list(vars), "facets": rows}
    if action == "rays":
        cone = build_cone(g)
        lines = ["vars: " + ", ".join(vars)]
        lines += ["(" + ", ".join(map(str, r)) + ")" for r in cone.rays]
        return lines, {"vars": list(vars), "rays": [list(r) for r in cone.rays]}
    form = canonical_form(g)
    if action == "psi":
        return [f"psi_flat = {form.factored}"], form.to_json()
    if action == "adjoint":
        p = adjoint_numerator(g, form)
        return [f"P = {p}"], {"vars": list(vars), "adjoint": str(p), "adjoint_json": p.to_json()}
    if action == "shifted":
        sf = shifted_factored(g, form)
        return [f"psi_shifted = {sf}"], {"vars": list(sf.vars), "psi_shifted": str(sf),
                                         "psi_shifted_json": sf.expand().to_json()}
    if action == "integrand":
        eps = _csv(args.eps, "eps")
        if eps is None:
            raise InputError("integrand needs --eps e1,...,en")
        run.options.update(eps=[_fmt(e) for e in eps])
        ci = cosmo_integrand(g, eps, form)
        sf = shifted_factored(g, form)
        lines = [
            f"integrand = {ci.prefactor} * {sf} * " + "*".join(
                f"a{i + 1}^{_fmt(e)}" for i, e in enumerate(eps)),
            f"measure = {ci.measure}",
        ]
        return lines, ci.to_json()
    raise InputError(f"unknown cosmo action {action!r}")


def cmd_dmod(args, run):
    from .weyl import (
        LeftIdeal, connection_matrices, d_monomial_str, gkz_system, groebner,
        integrability_defect, parse_operators,
    )

    action = args.action
    run.options.update(action=action, order=args.order)
    if action == "gkz":
        if not args.matrix or args.kappa is None:
            raise InputError("gkz needs --matrix A.json and --kappa k1,...,kk")
        A = run.json(args.matrix, "matrix")
        if not isinstance(A, list) or not all(isinstance(r, list) for r in A):
            raise InputError("A must be a JSON array of rows", source=args.matrix)
        try:
            A = [[int(x) for x in row] for row in A]
        except (TypeError, ValueError):
            raise InputError("A must have integer entries", source=args.matrix) from None
        kappa = _csv(args.kappa, "kappa")
        run.options.update(kappa=[_fmt(c) for c in kappa], degree_bound=args.degree_bound)
        system = gkz_system(A, kappa, args.degree_bound)
        lines = system.binomial_strings() + [str(e) for e in system.euler]
        lines.append(f"# toric part truncated at degree {system.degree_bound}")
        return lines, {
            "binomials": system.binomial_strings(),
            "euler": [str(e) for e in system.euler],
            "degree_bound": system.degree_bound,
            "truncated": system.truncated,
        }
    if not args.ops:
        raise InputError(f"{action} needs --ops FILE")
    text = run.read(args.ops, "ops")
    alg, ops = parse_operators(text, source=args.ops)
    ideal = LeftIdeal(tuple(op for _, op in ops))
    data = groebner(ideal, args.order)
    std = data.standard_monomials
    std_text = None if std is None else [d_monomial_str(s) for s in std]
    if action == "groebner":
        lines = [str(g) for g in data.basis]
        lines.append("standard monomials: " + ("infinite" if std is None else ", ".join(std_text)))
        return lines, {"basis": [str(g) for g in data.basis], "standard_monomials": std_text}
    if action == "rank":
        r = "infinite" if std is None else len(std)
        return [str(r)], {"rank": r, "standard_monomials": std_text}
    if action == "connection":
        mats = connection_matrices(ideal, args.order, data)
        flat = all(c.is_zero() for m in integrability_defect(alg, mats).values() for r in m for c in r)
        lines = ["standard monomials: " + ", ".join(std_text)]
        for i, m in enumerate(mats, start=1):
            lines.append(f"M{i} =")
            lines += ["  [" + ", ".join(str(c) for c in row) + "]" for row in m]
        lines.append(f"integrable: {'yes' if flat else 'no'}")
        return lines, {
            "standard_monomials": std_text,
            "matrices": [[[str(c) for c in row] for row in m] for m in mats],
            "integrable": flat,
        }
    raise InputError(f"unknown dmod action {action!r}")


def cmd_euler(args, run):
    from .arrangement import (
        Arrangement, euler_characteristic, generic_euler, intersection_poset, parse_forms,
    )

    text = run.read(args.forms, "forms")
    vars, params, forms = parse_forms(text, source=args.forms)
    run.options.update(torus=args.torus)
    polys = [p for _, p in forms]
    n = len(vars)
    out = {"vars": list(vars), "params": list(params), "torus": args.torus}
    if params:
        run.options.update(generic_trials=args.generic_trials, seed=args.seed)
        res = generic_euler(vars, params, polys, in_torus=args.torus,
                            trials=args.generic_trials, seed=args.seed)
        chi = res.chi
        out.update(res.to_json())
        lines = [
            f"chi per draw: {' '.join(map(str, res.values))}",
            f"stable: {'yes' if res.stable else 'no'}",
        ]
    else:
        arr = Arrangement(vars, tuple(polys), args.torus)
        chi = euler_characteristic(arr)
        poset = intersection_poset(arr)
        out["flats"] = len(poset.flats)
        lines = [f"flats: {len(poset.flats)}"]
    out["chi"] = chi
    lines.append(f"chi = {chi}")
    if args.torus:
        count = abs((-1) ** n * chi)
        out["master_integrals"] = count
        lines.append(f"master integrals = {count}")
    return lines, out


def cmd_grass(args, run):
    from .grassmannian import (
        amplituhedron_map, check_plucker_relations, is_nonnegative, plucker, plucker_relations,
    )

    action = args.action
    run.options.update(action=action)
    M = _matrix(run, args.matrix, "matrix")
    p = plucker(M)
    if action == "pluckers":
        js = p.to_json()
        return [f"{k} = {v}" for k, v in js["pluckers"].items()], js
    if action == "nonneg":
        ok = is_nonnegative(p)
        return [str(ok).lower()], {"nonnegative": ok}
    if action == "relations":
        ok = check_plucker_relations(p)
        count = len(plucker_relations(p.n, p.k))
        return [str(ok).lower(), f"# three-term relations checked: {count}"], {
            "relations_hold": ok, "relations_checked": count}
    if action == "map":
        if not args.Z:
            raise InputError("map needs --Z FILE")
        image = amplituhedron_map(p, _matrix(run, args.Z, "Z"))
        js = image.to_json()
        return [f"{k} = {v}" for k, v in js["pluckers"].items()], js
    raise InputError(f"unknown grass action {action!r}")


def _matrix(run, path, role):
    from .grassmannian import matrix_from_json

    return matrix_from_json(run.json(path, role), path)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", help="write a JSON document with run manifest to FILE")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized drivers")

    parser = argparse.ArgumentParser(prog="posgeom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"posgeom {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("symanzik", parents=[common], help="Symanzik and graph polynomials")
    p.add_argument("--graph", required=True)
    p.add_argument("--kinematics")
    p.add_argument("--numeric", action="store_true",
                   help="unspecified kinematic values are zero instead of symbols")
    p.add_argument("--nu", help="comma-separated edge exponents for the Lee-Pomeransky record")
    p.add_argument("--dim", default="D", help="spacetime dimension (symbol or rational)")
    p.set_defaults(func=cmd_symanzik)

    p = sub.add_parser("cosmo", parents=[common], help="cosmological polytope and wavefunction")
    p.add_argument("action", choices=["facets", "rays", "psi", "adjoint", "shifted", "integrand"])
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", help="comma-separated twist exponents, one per vertex")
    p.set_defaults(func=cmd_cosmo)

    p = sub.add_parser("dmod", parents=[common], help="Weyl algebra computations")
    p.add_argument("action", choices=["groebner", "rank", "connection", "gkz"])
    p.add_argument("--ops")
    p.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    p.add_argument("--matrix", help="integer matrix A (JSON) for gkz")
    p.add_argument("--kappa", help="comma-separated kappa entries for gkz")
    p.add_argument("--degree-bound", type=int, default=2)
    p.set_defaults(func=cmd_dmod)

    p = sub.add_parser("euler", parents=[common], help="Euler characteristic of arrangement complements")
    p.add_argument("--forms", required=True)
    p.add_argument("--torus", action="store_true", help="complement in the algebraic torus")
    p.add_argument("--generic-trials", type=int, default=5)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("grass", parents=[common], help="Pluecker coordinates and positivity")
    p.add_argument("action", choices=["pluckers", "nonneg", "relations", "map"])
    p.add_argument("--matrix", required=True)
    p.add_argument("--Z")
    p.set_defaults(func=cmd_grass)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    if not getattr(args, "command", None):
        parser.print_usage(stderr)
        print("posgeom: error: a subcommand is required", file=stderr)
        return EXIT_USAGE
    command = [args.command] + ([args.action] if getattr(args, "action", None) else [])
    run = _Run(command)
    try:
        lines, result = args.func(args, run)
    except InputError as exc:
        print(f"posgeom: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except (PosgeomError, ArithmeticError, ValueError) as exc:
        print(f"posgeom: error: {exc}", file=stderr)
        return EXIT_MATH
    if args.json:
        stdout.write(json.dumps(result, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    if args.out:
        doc = run.manifest(result)
        try:
            Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            print(f"posgeom: input error: cannot write {args.out}: {exc.strerror}", file=stderr)
            return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
