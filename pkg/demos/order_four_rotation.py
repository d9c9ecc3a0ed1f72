"""The order-4 rotation over Z/2^k: faithful at every precision, yet mod 2 it
collapses to a swap with an invariant line that never lifts to a summand."""

from prufer_forge import corpus
from prufer_forge.irreducibility import meataxe_mod_p, padic_irreducible
from prufer_forge.lifting import hull_search
from prufer_forge.reps import check_theorem5, reduce_mod, reduction_kernel


def main(k=6):
    rep = corpus.rotation_c4(k)
    print(f"group order over Z/2^{k}: {rep.order}")
    ker = reduction_kernel(rep, 1)
    print(f"kernel of reduction mod 2: order {ker.order}, exponent {ker.exponent}")
    print("faithfulness check:", "PASS" if check_theorem5(rep).passed else "FAIL")

    mod2 = reduce_mod(rep, 1)
    v = meataxe_mod_p(mod2)
    print(f"mod 2: {v.status}, invariant line {v.witness}")

    padic = padic_irreducible(rep, k)
    print(f"2-adic search: {padic.status}({padic.precision})")
    for d in padic.trace["searches"][0]["dead_ends"]:
        print(f"  dead end at level {d['level']} with Y={d['Y']}, certificate verified: {d['certificate_verified']}")

    hull = hull_search(mod2, k)
    print(f"hull tower reaches level {hull['max_level']} after {hull['node_count']} nodes")


if __name__ == "__main__":
    main()
