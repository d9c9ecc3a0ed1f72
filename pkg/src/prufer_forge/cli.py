"""Command-line entry point: ``prufer-forge <verb> <subcommand> ...``.

Every command writes one JSON report (sorted keys) to stdout or ``--out``.
Exit codes: 0 answer produced (Obstructed and Reducible are answers),
1 a check or demo manifest failed, 2 bad input, 3 a cap or budget ran out.
"""

import argparse
import json
import sys

from . import __version__, corpus
from .affine import (
    build_affine,
    congruence_quotient,
    invariant_vs_normal,
    orbits,
    parse_subgroup,
    regularity_report,
)
from .errors import CAP_ENV_VAR, CapExceeded, NotUnit, default_cap
from .gallery import ALIASES, DEMOS, run_demo
from .groups import DEFAULT_CLOSURE_CAP, close
from .irreducibility import DEFAULT_PRECISION, eigenlines, meataxe_mod_p, padic_irreducible
from .lifting import DEFAULT_NODE_BUDGET, hull_search, lift_once, nocando_probe
from .loewy import AlgebraModule, check_lemma_bound, loewy_series, radical, regular_module, socle
from .polynomials import Inapplicable, format_poly, hensel_factor
from .reps import Representation, check_theorem5, dual_cover_check, dual_rep, reduce_mod, reduction_kernel
from .zpk import RingSpec, ZpkMatrix, howell_form, smith_exponents, solve

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _matrix(data, ring=None):
    if isinstance(data, dict):
        return ZpkMatrix.from_json(data)
    if ring is None:
        raise InputError("a bare matrix needs a ring")
    return ZpkMatrix(ring, data)


def _ring(data):
    r = data.get("ring", data)
    try:
        return RingSpec(int(r["p"]), int(r["k"]))
    except KeyError as exc:
        raise InputError("missing p or k") from exc


def _rep_from_json(data):
    ring = _ring(data)
    gens = [_matrix(g, ring) for g in data["generators"]]
    return Representation(close(gens), data.get("label", ""))


def _example(args):
    name = ALIASES.get(args.example, args.example)
    k = args.k
    if name == "rotation-c4":
        return corpus.rotation_c4(k or 3)
    if name == "wreath-c4":
        return corpus.wreath_c4(args.s, k or 3)
    if name == "dihedral":
        return corpus.dihedral(k or 3)
    if name == "c5-unipotent":
        return corpus.c5_unipotent()
    if name == "trivial":
        return corpus.trivial(2, 2, k or 1)
    raise InputError(f"unknown example {name!r}")


def _rep(args):
    if getattr(args, "example", None):
        rep = _example(args)
    elif getattr(args, "input", None):
        rep = _rep_from_json(_load(args.input))
    else:
        raise InputError("give --in FILE or --example NAME")
    return rep



# verbs --------------------------------------------------------------------

def cmd_howell(args):
    A = _matrix(_load(args.input))
    H, U = howell_form(A)
    return {"H": H.to_json(), "U": U.to_json(), "smith_exponents": list(smith_exponents(A))}, EXIT_OK


def cmd_solve(args):
    data = _load(args.input)
    A = _matrix(data["A"])
    sol = solve(A, data["b"])
    return {
        "solvable": sol.solvable,
        "particular": None if sol.particular is None else list(sol.particular),
        "kernel_basis": [list(v) for v in sol.kernel_basis],
    }, EXIT_OK


def cmd_group(args):
    rep = _rep(args)
    return rep.to_json(elements=args.elements), EXIT_OK


def cmd_rep(args):
    rep = _rep(args)
    if args.sub == "kernel":
        return reduction_kernel(rep, args.j).to_json(), EXIT_OK
    if args.sub == "check-thm5":
        v = check_theorem5(rep)
        return v.to_json(), EXIT_OK if v.passed else EXIT_CHECK
    if args.sub == "dual":
        return dual_rep(rep).to_json(), EXIT_OK
    if args.sub == "dual-check":
        out = dual_cover_check(rep)
        return out, EXIT_OK if out["agree"] else EXIT_CHECK
    if args.sub == "reduce":
        return reduce_mod(rep, args.j).to_json(), EXIT_OK
    raise InputError(args.sub)


def cmd_lift(args):
    if args.sub == "nocando":
        return nocando_probe(args.p, args.kmax, args.budget, args.slow), EXIT_OK
    rep = _rep(args)
    if args.sub == "once":
        return lift_once(rep).to_json(), EXIT_OK
    if args.sub == "hull":
        if rep.k != 1:
            rep = reduce_mod(rep, 1)
        return hull_search(rep, args.kmax, args.budget), EXIT_OK
    raise InputError(args.sub)


def cmd_irred(args):
    # --k is both the precision of a named example and the certification precision
    want = args.k or DEFAULT_PRECISION
    if args.example and args.k is None:
        args.k = want
    rep = _rep(args)
    if args.sub == "modp":
        if rep.k != 1:
            rep = reduce_mod(rep, 1)
        return meataxe_mod_p(rep, args.seed).to_json(), EXIT_OK
    if args.sub == "padic":
        return padic_irreducible(rep, min(want, rep.k)).to_json(), EXIT_OK
    if args.sub == "charpoly":
        out = []
        for g in rep.generators:
            info = eigenlines(g)
            fac = hensel_factor(info["charpoly"], g.ring)
            out.append({
                "charpoly": format_poly(info["charpoly"]),
                "hensel": "Inapplicable" if isinstance(fac, Inapplicable) else [format_poly(f) for f in fac],
                "roots": info["roots"],
                "eigenlines": [{"eigenvalue": lam, "vector": list(v)} for lam, v in info["lines"]],
                "method": info["method"],
            })
        return {"generators": out}, EXIT_OK
    raise InputError(args.sub)


def cmd_loewy(args):
    if args.sub == "radical":
        if args.group:
            group = _rep_from_json(_load(args.group)).group
        else:
            group = _rep(args).group
        J = radical(group, args.p, args.seed)
        reg = regular_module(group, args.p)
        out = J.to_json()
        out["regular_loewy_length"] = loewy_series(reg, J).length
        return out, EXIT_OK
    if args.module:
        module = AlgebraModule.from_json(_load(args.module))
    else:
        # no module given: the regular module of the representation's group
        module = regular_module(_rep(args).group, args.p)
    J = radical(module.group, module.p, args.seed)
    if args.sub == "series":
        out = loewy_series(module, J).to_json()
        out["socle"] = [list(v) for v in socle(module, J)]
        return out, EXIT_OK if out["cross_checked"] else EXIT_CHECK
    if args.sub == "bound":
        out = check_lemma_bound(module, J)
        return out, EXIT_OK if out["passed"] else EXIT_CHECK
    raise InputError(args.sub)


def cmd_affine(args):
    g = build_affine(_rep(args), level=args.level)
    if args.sub == "build":
        return g.to_json(), EXIT_OK
    if args.sub == "orbits":
        sub = parse_subgroup(g, args.sub_spec)
        out = regularity_report(g, sub)
        out["blocks"] = [[list(g.points[x]) for x in b] for b in orbits(g, sub)]
        return out, EXIT_OK
    if args.sub == "check-normality":
        out = invariant_vs_normal(g)
        return out, EXIT_OK if out["equivalence_holds"] else EXIT_CHECK
    if args.sub == "quotient":
        K = {t for t, _ in parse_subgroup(g, args.kernel)}
        return congruence_quotient(g, K), EXIT_OK
    raise InputError(args.sub)


def cmd_demo(args):
    out = run_demo(args.name, args.s, args.p, args.seed, args.slow)
    return out, EXIT_OK if out["passed"] else EXIT_CHECK


# parser -------------------------------------------------------------------

def _rep_inputs(p):
    p.add_argument("--in", dest="input", help="representation JSON: {ring:{p,k}, generators:[...]}")
    p.add_argument("--example", help="named example: rotation-c4 (ex4), wreath-c4 (ex5), dihedral, c5-unipotent, trivial")
    p.add_argument("--k", type=int, default=None, help="precision for named examples")
    p.add_argument("--s", type=int, default=2, help="number of blocks for wreath_c4")


def build_parser():
    ap = argparse.ArgumentParser(prog="prufer-forge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    verbs = ap.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("howell", parents=[common], help="Howell form and Smith exponents")
    p.add_argument("--in", dest="input", required=True, help="matrix JSON {p, k, rows}")
    p.set_defaults(func=cmd_howell)

    p = verbs.add_parser("solve", parents=[common], help="solve A x = b over Z/p^k")
    p.add_argument("--in", dest="input", required=True, help="JSON {A: matrix, b: [...]}")
    p.set_defaults(func=cmd_solve)

    p = verbs.add_parser("group", parents=[common], help="close generators into a finite group")
    p.add_argument("sub", choices=["close"])
    _rep_inputs(p)
    p.add_argument("--elements", action="store_true", help="list every element")
    p.set_defaults(func=cmd_group)

    p = verbs.add_parser("rep", parents=[common], help="reduction kernels, duals, faithfulness check")
    p.add_argument("sub", choices=["kernel", "check-thm5", "dual", "dual-check", "reduce"])
    _rep_inputs(p)
    p.add_argument("--j", type=int, default=1)
    p.set_defaults(func=cmd_rep)

    p = verbs.add_parser("lift", parents=[common], help="lift to the next precision, hull towers")
    p.add_argument("sub", choices=["once", "hull", "nocando"])
    _rep_inputs(p)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--budget", type=int, default=None, help=f"node budget (default {DEFAULT_NODE_BUDGET})")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--slow", action="store_true", help="allow p = 7 in the GL(2,p) probe")
    p.set_defaults(func=cmd_lift)

    p = verbs.add_parser("irred", parents=[common], help="irreducibility mod p and p-adically")
    p.add_argument("sub", choices=["modp", "padic", "charpoly"])
    _rep_inputs(p)
    p.set_defaults(func=cmd_irred)

    p = verbs.add_parser("loewy", parents=[common], help="radical, socle series and the socle bound")
    p.add_argument("sub", choices=["radical", "series", "bound"])
    _rep_inputs(p)
    p.add_argument("--group", help="group JSON for radical")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--module", help="module JSON {p, dim, action}; default: regular module of the rep's group")
    p.set_defaults(func=cmd_loewy)

    p = verbs.add_parser("affine", parents=[common], help="affine split extensions on points")
    p.add_argument("sub", choices=["build", "orbits", "check-normality", "quotient"])
    _rep_inputs(p)
    p.add_argument("--sub", dest="sub_spec", default="translations",
                   help="translations | trivial | stabilizer | congruence[:i] | vec:a,b;c,d")
    p.add_argument("--kernel", default="congruence", help="subgroup spec of K for quotient")
    p.add_argument("--level", type=int, default=None,
                   help="act on (Z/p^level)^r through reduction (default: the rep's precision)")
    p.set_defaults(func=cmd_affine)

    p = verbs.add_parser("demo", parents=[common], help="run a pinned example pipeline")
    p.add_argument("name", choices=DEMOS + tuple(ALIASES))
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--slow", action="store_true")
    p.set_defaults(func=cmd_demo)
    return ap


def _caps():
    return {
        "env_override": default_cap(None),
        "closure": default_cap(DEFAULT_CLOSURE_CAP),
        "hull_budget": default_cap(DEFAULT_NODE_BUDGET),
    }


def emit(report, out=None):
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {
        "tool": "prufer-forge",
        "version": __version__,
        "command": [args.verb, getattr(args, "sub", None) or getattr(args, "name", None)],
        "seed": args.seed,
        "caps": _caps(),
        "cap_env_var": CAP_ENV_VAR,
    }
    try:
        result, code = args.func(args)
        report["status"] = "ok" if code == EXIT_OK else "check_failed"
        report["result"] = result
    except CapExceeded as exc:
        report["status"] = "capped"
        report["error"] = str(exc)
        report["result"] = exc.partial
        code = EXIT_CAP
    except (InputError, ValueError, TypeError, KeyError, NotUnit) as exc:
        report["status"] = "input_error"
        report["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_INPUT
    emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
