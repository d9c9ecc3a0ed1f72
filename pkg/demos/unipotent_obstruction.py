"""C5 acting through [[1,1],[0,1]] mod 5 has no lift to Z/25."""

from prufer_forge import corpus
from prufer_forge.lifting import hull_search, lift_once


def main():
    rep = corpus.c5_unipotent()
    out = lift_once(rep)
    w = out.witness
    print(f"lift 5 -> 25: {out.status}")
    print(f"system: {w['equations']} equations in {w['unknowns']} unknowns")
    print(f"certificate (row -> coefficient): {w['certificate']}, verified: {w['certificate_verified']}")
    # the defect accumulates along the spanning tree, so show the reduced right-hand sides
    for pair in w["pairs"]:
        if any(any(row) for row in pair["reduced_rhs"]):
            print(f"  g={pair['g']} s={pair['generator']} reduced rhs={pair['reduced_rhs']}")
    print(f"hull search stops at level {hull_search(rep, 3)['max_level']}")


if __name__ == "__main__":
    main()
