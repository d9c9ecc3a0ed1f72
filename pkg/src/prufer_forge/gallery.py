"""Pinned demo pipelines: each runs a fixed computation and diffs it against a manifest."""

from math import factorial

from . import corpus
from .affine import build_affine, orbits, parse_subgroup
from .irreducibility import meataxe_mod_p, padic_irreducible
from .lifting import hull_search, lift_once, nocando_probe
from .reps import check_theorem5, dual_cover_check, reduce_mod, reduction_kernel

DEMOS = ("rotation-c4", "wreath-c4", "dihedral", "c5-unipotent", "gl2p")
# short names accepted on the command line
ALIASES = {"ex4": "rotation-c4", "ex5": "wreath-c4"}


def manifest(name, s=2, p=5):
    """Expected values for a demo, as ``{check_name: value}``."""
    if name == "rotation-c4":
        return {
            "group_order": 4,
            "kernel_order_mod_2": 2,
            "mod_2_status": "Reducible",
            "padic_status": "IrreducibleUpToPrecision(6)",
            "hull_max_level": 6,
        }
    if name == "wreath-c4":
        return {
            "group_order": 4**s * factorial(s),
            "kernel_order_mod_2": 2**s,
            "kernel_elementary_abelian": True,
            "theorem5": "PASS",
        }
    if name == "dihedral":
        return {
            "group_order": 2,
            "affine_order": 16,
            "blocks_of_translation_4": [2, 2, 2, 2],
            "theorem5": "PASS",
            "dual_routes_agree": True,
        }
    if name == "c5-unipotent":
        return {"lift_status": "Obstructed", "certificate_verified": True, "hull_max_level": 1}
    if name == "gl2p":
        return {"group_order": (p * p - 1) * (p * p - p), "states_no_integral_cover": True}
    raise ValueError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")


def _observe(name, s, p, seed, slow):
    if name == "rotation-c4":
        rep = corpus.rotation_c4(6)
        mod2 = reduce_mod(rep, 1)
        padic = padic_irreducible(rep, 6)
        return {
            "group_order": rep.order,
            "kernel_order_mod_2": reduction_kernel(rep, 1).order,
            "mod_2_status": meataxe_mod_p(mod2, seed).status,
            "padic_status": f"{padic.status}({padic.precision})",
            "hull_max_level": hull_search(mod2, 6)["max_level"],
        }
    if name == "wreath-c4":
        rep = corpus.wreath_c4(s, 3)
        ker = reduction_kernel(rep, 1)
        return {
            "group_order": rep.order,
            "kernel_order_mod_2": ker.order,
            "kernel_elementary_abelian": ker.is_elementary_abelian_2,
            "theorem5": "PASS" if check_theorem5(rep).passed else "FAIL",
        }
    if name == "dihedral":
        rep = corpus.dihedral(3)
        g = build_affine(rep)
        return {
            "group_order": rep.order,
            "affine_order": g.order,
            "blocks_of_translation_4": [len(b) for b in orbits(g, parse_subgroup(g, "vec:4"))],
            "theorem5": "PASS" if check_theorem5(rep).passed else "FAIL",
            "dual_routes_agree": dual_cover_check(rep)["agree"],
        }
    if name == "c5-unipotent":
        rep = corpus.c5_unipotent()
        out = lift_once(rep)
        return {
            "lift_status": out.status,
            "certificate_verified": bool(out.witness and out.witness["certificate_verified"]),
            "hull_max_level": hull_search(rep, 2)["max_level"],
        }
    if name == "gl2p":
        probe = nocando_probe(p, slow=slow)
        return {
            "group_order": probe["group_order"],
            "states_no_integral_cover": "no integral cover" in probe["statement"],
            "_probe": {k: v for k, v in probe.items() if k != "tower"},
        }
    raise ValueError(f"unknown demo {name!r}")


def run_demo(name, s=2, p=5, seed=0, slow=False):
    name = ALIASES.get(name, name)
    expected = manifest(name, s, p)
    observed = _observe(name, s, p, seed, slow)
    checks = []
    for key, want in expected.items():
        got = observed.get(key)
        checks.append({"name": key, "expected": want, "observed": got, "pass": got == want})
    report = {
        "demo": name,
        "params": {"s": s} if name == "wreath-c4" else {"p": p} if name == "gl2p" else {},
        "checks": checks,
        "passed": all(c["pass"] for c in checks),
        "diff": [c for c in checks if not c["pass"]],
    }
    if "_probe" in observed:
        report["probe"] = observed["_probe"]
    return report
