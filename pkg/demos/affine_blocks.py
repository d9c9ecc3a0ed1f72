"""Translations and H acting on the points of (Z/2^k)^r, and the block system
cut out by the congruence subgroup."""

from prufer_forge import corpus
from prufer_forge.affine import (
    build_affine,
    congruence_kernel,
    congruence_quotient,
    invariant_vs_normal,
    orbits,
    parse_subgroup,
    regularity_report,
)


def main():
    g = build_affine(corpus.dihedral(3))
    print(f"inversion on Z/8: {g.degree} points, group order {g.order}")
    blocks = orbits(g, parse_subgroup(g, "vec:4"))
    print("blocks of <4>:", [[g.points[x][0] for x in b] for b in blocks])

    g = build_affine(corpus.rotation_c4(2))
    print(f"rotation on (Z/4)^2: order {g.order}")
    print("translations regular:", regularity_report(g, parse_subgroup(g, "translations"))["regular"])
    out = invariant_vs_normal(g)
    print(f"{out['subgroups']} translation subgroups, {out['normal']} normal, "
          f"invariant <=> normal: {out['equivalence_holds']}")
    q = congruence_quotient(g, congruence_kernel(g, 1))
    for key in ("K_order", "blocks", "kernel_order", "matches_lower_extension", "natural_map_kernel_equals_K"):
        print(f"  {key}: {q[key]}")


if __name__ == "__main__":
    main()
