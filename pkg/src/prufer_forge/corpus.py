"""Named example representations and the integral-matrix corpus used by the checks."""

from .groups import close, close_integral, direct_sum, wreath_imprimitive
from .reps import Representation
from .zpk import RingSpec, ZpkMatrix

ROTATION = ((0, 1), (-1, 0))
INVERSION = ((-1,),)
UNIPOTENT = ((1, 1), (0, 1))


def _rep(gens, ring, label):
    return Representation(close([ZpkMatrix(ring, g) for g in gens]), label)


def rotation_c4(k=3):
    """The rotation by a quarter turn over Z/2^k: cyclic of order 4, irreducible 2-adically."""
    return _rep([ROTATION], RingSpec(2, k), f"C4 rotation mod 2^{k}")


def wreath_c4(s, k=3):
    """C4 wr Sym(s) acting imprimitively on s blocks of size 2."""
    base = rotation_c4(k).group
    return Representation(wreath_imprimitive(base, s), f"C4 wr S{s} mod 2^{k}")


def dihedral(k=3):
    """Inversion on Z/2^k: the finite shadow of the infinite dihedral 2-group."""
    return _rep([INVERSION], RingSpec(2, k), f"inversion mod 2^{k}")


def c5_unipotent():
    return _rep([UNIPOTENT], RingSpec(5, 1), "C5 unipotent mod 5")


def trivial(r=1, p=2, k=1):
    return _rep([tuple(tuple(int(i == j) for j in range(r)) for i in range(r))], RingSpec(p, k), "trivial")


def _perm(perm):
    n = len(perm)
    return tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))


def _companion(coeffs):
    """Companion matrix of the monic polynomial with low-first ``coeffs`` (leading 1 omitted)."""
    n = len(coeffs)
    rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
    rows.append([-c for c in coeffs])
    return tuple(map(tuple, rows))


def _neg_identity(n):
    return tuple(tuple(-int(i == j) for j in range(n)) for i in range(n))


def _block(*mats):
    n = sum(len(m) for m in mats)
    rows = []
    off = 0
    for m in mats:
        for row in m:
            rows.append(tuple([0] * off + list(row) + [0] * (n - off - len(row))))
        off += len(m)
    return tuple(rows)


# generator sets of finite integral matrix groups; each is checked finite before use
INTEGRAL_GENERATORS = {
    "inversion": [INVERSION],
    "rotation C4": [ROTATION],
    "order 3 companion": [_companion((1, 1))],
    "order 6 companion": [_companion((1, -1))],
    "swap": [_perm((1, 0))],
    "3-cycle": [_perm((1, 2, 0))],
    "4-cycle": [_perm((1, 2, 3, 0))],
    "x^4+1 companion": [_companion((1, 0, 0, 0))],
    "5th cyclotomic companion": [_companion((1, 1, 1, 1))],
    "-I3": [_neg_identity(3)],
    "S3 permutations": [_perm((1, 0, 2)), _perm((1, 2, 0))],
    "signed swap": [_perm((1, 0)), _neg_identity(2)],
    "rotation + inversion": [_block(ROTATION, INVERSION), _block(((1, 0), (0, 1)), INVERSION)],
    "order 3 + swap": [_block(_companion((1, 1)), ((1, 0), (0, 1))), _block(((1, 0), (0, 1)), _perm((1, 0)))],
    "dihedral of order 8": [ROTATION, ((0, 1), (1, 0))],
    "dihedral of order 12": [_companion((1, -1)), ((0, 1), (1, 0))],
    "S4 permutations": [_perm((1, 0, 2, 3)), _perm((1, 2, 3, 0))],
}


def integral_corpus(primes=(2, 3, 5), k=3):
    """Representations from the integral generator sets, reduced mod p^k.

    Every generator set is first closed over Z (so each rep is the truncation
    of a genuine finite integral group) and the reduction is checked to be
    faithful at precision k.
    """
    out = []
    for name, gens in INTEGRAL_GENERATORS.items():
        size = len(close_integral(gens))
        for p in primes:
            rep = _rep(gens, RingSpec(p, k), f"{name} mod {p}^{k}")
            if rep.order != size:
                raise AssertionError(f"{name} is not faithful mod {p}^{k}")
            out.append(rep)
    for s in (2, 3):
        out.append(wreath_c4(s, k))
    out.append(Representation(direct_sum(rotation_c4(k).group, dihedral(k).group), f"C4 + inversion mod 2^{k}"))
    return out
