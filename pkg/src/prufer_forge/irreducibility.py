"""Irreducibility over F_p (MeatAxe) and, up to a precision, over the p-adic field.

The p-adic test looks for an invariant free direct summand of rank s with
0 < s < r.  Such a summand reduces to an invariant subspace mod p, so every
mod-p invariant subspace is tried as a starting point and lifted one power
of p at a time.  In coordinates where the subspace's pivot columns come
first, a free summand with that reduction is the row span of [I | Y], and
invariance under g = [[a, b], [c, d]] is the matrix Riccati equation

    b + Y d - (a + Y c) Y = 0.

Each step Y -> Y + p^j Z is linear in Z over F_p.
"""

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import fp
from .errors import CapExceeded, default_cap
from .polynomials import Inapplicable, _mod_p_factors, charpoly, hensel_factor, roots
from .zpk import RingSpec, ZpkMatrix, invert, left_kernel

__all__ = [
    "IrredVerdict",
    "InvariantSummand",
    "meataxe",
    "meataxe_mod_p",
    "padic_irreducible",
    "invariant_subspaces",
    "summand_search",
    "eigenlines",
    "hensel_factor",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 6
DEFAULT_SPIN_CAP = 1 << 16
DEFAULT_SUBSPACE_CAP = 5000
DEFAULT_SEARCH_BUDGET = 10_000
HOLT_REES_ATTEMPTS = 32


@dataclass
class IrredVerdict:
    status: str  # Irreducible | Reducible | Inconclusive | IrreducibleUpToPrecision
    witness: object = None
    precision: int | None = None
    method: str = ""
    seed: int | None = None
    trace: dict = field(default_factory=dict)

    def to_json(self):
        data = {"status": self.status, "method": self.method, "trace": self.trace}
        if self.precision is not None:
            data["precision"] = self.precision
        if self.seed is not None:
            data["seed"] = self.seed
        if isinstance(self.witness, InvariantSummand):
            data["witness"] = self.witness.to_json()
        elif self.witness is not None:
            data["witness"] = [list(v) for v in self.witness]
        return data


@dataclass(frozen=True)
class InvariantSummand:
    basis: ZpkMatrix
    complement: ZpkMatrix

    @property
    def rank(self):
        return self.basis.nrows

    def change_of_basis(self):
        return ZpkMatrix(self.basis.ring, list(self.basis.rows) + list(self.complement.rows))

    def is_free(self):
        try:
            invert(self.change_of_basis())
        except ArithmeticError:
            return False
        return True

    def is_invariant(self, mats):
        """Every ``v @ g`` stays in the span of the basis (exact over Z/p^k)."""
        C = self.change_of_basis()
        Cinv = invert(C)
        s = self.rank
        for g in mats:
            coords = self.basis @ g @ Cinv
            if any(x for row in coords.rows for x in row[s:]):
                return False
        return True

    def to_json(self):
        return {"rank": self.rank, "basis": self.basis.to_json(), "complement": self.complement.to_json()}


def _mod_p_gens(rep):
    p = rep.p
    return [tuple(tuple(x % p for x in row) for row in m.rows) for m in rep.generators]


def _is_invariant(basis, gens, p):
    e = fp.Echelon(p, len(basis[0]) if basis else 0)
    for v in basis:
        e.add(v)
    return all(e.contains(fp.vec_mat(v, g, p)) for v in basis for g in gens)


def _random_algebra_element(gens, p, rng, dim):
    words = [fp.identity(dim)] + list(gens)
    prods = []
    for _ in range(3):
        a, b = rng.choice(words), rng.choice(words)
        prods.append(fp.mat_mul(a, b, p))
    words += prods
    acc = tuple(tuple(0 for _ in range(dim)) for _ in range(dim))
    for w in words:
        c = rng.randrange(p)
        if c:
            acc = tuple(tuple((x + c * y) % p for x, y in zip(r1, r2)) for r1, r2 in zip(acc, w))
    return acc


def _projective_vectors(p, dim):
    """One nonzero vector per line: first nonzero coordinate equal to 1."""
    for lead in range(dim):
        for tail in product(range(p), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + tail


def meataxe_mod_p(rep, seed=0, cap=None, attempts=HOLT_REES_ATTEMPTS):
    """Holt-Rees style test over F_p, then exhaustive spinning at desk scale."""
    if rep.k != 1:
        raise ValueError("meataxe_mod_p needs a representation over F_p")
    return meataxe(_mod_p_gens(rep), rep.p, rep.degree, seed, cap, attempts)


def meataxe(gens, p, dim, seed=0, cap=None, attempts=HOLT_REES_ATTEMPTS):
    """MeatAxe on bare generator matrices (tuples over F_p, right action)."""
    cap = default_cap(DEFAULT_SPIN_CAP) if cap is None else cap
    gens = [tuple(tuple(x % p for x in row) for row in g) for g in gens]
    trace = {"attempts": 0}
    if dim == 1:
        return IrredVerdict("Irreducible", None, method="degree one", seed=seed, trace=trace)
    rng = random.Random(seed)
    for attempt in range(attempts):
        trace["attempts"] = attempt + 1
        a = _random_algebra_element(gens, p, rng, dim)
        for f, _ in _mod_p_factors(fp.charpoly(a, p), p):
            fa = fp.poly_eval_matrix(f, a, p)
            null = fp.left_nullspace(fa, p, dim)
            # any nullspace vector with a proper spin settles reducibility
            for v in null[:3]:
                sub = fp.spin([v], gens, p, dim)
                if len(sub) < dim:
                    return _reducible(sub, gens, p, "spin of a nullspace vector", seed, trace)
            if len(null) != len(f) - 1:
                continue
            gt = [fp.transpose(g) for g in gens]
            wnull = fp.left_nullspace(fp.transpose(fa), p, dim)
            dual = fp.spin([wnull[0]], gt, p, dim)
            if len(dual) < dim:
                sub = fp.rref(fp.nullspace(dual, p, dim), p, dim)
                return _reducible(sub, gens, p, "annihilator of a dual spin", seed, trace)
            trace["certificate"] = {"factor": list(f), "algebra_element": [list(r) for r in a]}
            return IrredVerdict("Irreducible", None, method="Holt-Rees criterion", seed=seed, trace=trace)
    if p**dim > cap:
        return IrredVerdict("Inconclusive", None, method="random search exhausted", seed=seed, trace=trace)
    for v in _projective_vectors(p, dim):
        sub = fp.spin([v], gens, p, dim)
        if len(sub) < dim:
            return _reducible(sub, gens, p, "exhaustive spin", seed, trace)
    return IrredVerdict("Irreducible", None, method="exhaustive spin", seed=seed, trace=trace)


def _reducible(sub, gens, p, method, seed, trace):
    if not _is_invariant(sub, gens, p):
        raise AssertionError("reducibility witness is not invariant")
    return IrredVerdict("Reducible", tuple(sub), method=method, seed=seed, trace=trace)


def invariant_subspaces(gens, p, dim, cap=None):
    """Every proper nonzero invariant subspace, as sorted echelon bases.

    Cyclic submodules from one vector per line, then closure under sums.
    """
    cap = default_cap(DEFAULT_SUBSPACE_CAP) if cap is None else cap
    if (p**dim - 1) // (p - 1) > default_cap(DEFAULT_SPIN_CAP):
        raise CapExceeded(f"too many lines to spin in dimension {dim} over F_{p}")
    found = set()
    for v in _projective_vectors(p, dim):
        sub = fp.spin([v], gens, p, dim)
        if len(sub) < dim:
            found.add(sub)
    cyclic = sorted(found)
    frontier = list(cyclic)
    while frontier:
        new = []
        for a in frontier:
            for b in cyclic:
                s = fp.rref(list(a) + list(b), p, dim)
                if 0 < len(s) < dim and s not in found:
                    found.add(s)
                    new.append(s)
                    if len(found) > cap:
                        raise CapExceeded(f"more than {cap} invariant subspaces")
        frontier = new
    return sorted(found, key=lambda s: (len(s), fp.pivot_columns(s), s))


class _Riccati:
    """Lifting data for one mod-p invariant subspace."""

    def __init__(self, sub, mats, ring):
        self.ring = ring
        self.p, self.k = ring.p, ring.k
        self.dim = mats[0].nrows
        self.s = len(sub)
        piv = list(fp.pivot_columns(sub))
        rest = [c for c in range(self.dim) if c not in piv]
        self.piv, self.rest = piv, rest
        self.y0 = [[row[c] for c in rest] for row in sub]
        self.blocks = []
        for g in mats:
            rows = g.rows
            self.blocks.append((
                [[rows[i][j] for j in piv] for i in piv],
                [[rows[i][j] for j in rest] for i in piv],
                [[rows[i][j] for j in piv] for i in rest],
                [[rows[i][j] for j in rest] for i in rest],
            ))
        p = self.p
        s, t = self.s, len(rest)
        # linearisation Z -> Z d - a Z - Y0 c Z - Z c Y0 over F_p, one block per generator
        Y0 = np.array(self.y0, dtype=np.int64)
        red = [[np.array(x, dtype=np.int64) % p for x in blk] for blk in self.blocks]
        cols = []
        for idx in range(s * t):
            Z = np.zeros((s, t), dtype=np.int64)
            Z.flat[idx] = 1
            cols.append(np.concatenate(
                [((Z @ d - a @ Z - Y0 @ c @ Z - Z @ c @ Y0) % p).reshape(-1) for a, _, c, d in red]
            ))
        self.L = np.array(cols, dtype=np.int64).T

    def residual(self, Y, q):
        """R(Y) for every generator, stacked, as integers mod q."""
        out = []
        for a, b, c, d in self.blocks:
            s, t = self.s, len(self.rest)
            for i in range(s):
                for j in range(t):
                    v = b[i][j] + sum(Y[i][m] * d[m][j] for m in range(t))
                    w = 0
                    for m in range(s):
                        coef = a[i][m] + sum(Y[i][l] * c[l][m] for l in range(t))
                        w += coef * Y[m][j]
                    out.append((v - w) % q)
        return out

    def summand(self, Y):
        ring = self.ring
        basis = []
        for i in range(self.s):
            row = [0] * self.dim
            row[self.piv[i]] = 1
            for j, c in enumerate(self.rest):
                row[c] = Y[i][j]
            basis.append(row)
        comp = [[int(j == c) for j in range(self.dim)] for c in self.rest]
        return InvariantSummand(ZpkMatrix(ring, basis, self.dim), ZpkMatrix(ring, comp, self.dim))


def summand_search(sub, rep, k=None, budget=None):
    """Depth-first search for an invariant free summand reducing to ``sub``.

    Returns ``(summand or None, info)`` where ``info`` records the deepest
    level reached, node count and the verified certificates at dead ends.
    Raises CapExceeded when the node budget runs out.
    """
    k = rep.k if k is None else k
    if k > rep.k:
        raise ValueError(f"precision {k} exceeds the representation's {rep.k}")
    budget = default_cap(DEFAULT_SEARCH_BUDGET) if budget is None else budget
    ring = RingSpec(rep.p, k)
    mats = [g.reduce(k) for g in rep.generators]
    ric = _Riccati(sub, mats, ring)
    p = rep.p
    s, t = ric.s, len(ric.rest)
    info = {"subspace": [list(v) for v in sub], "max_level": 1, "nodes": 0, "dead_ends": []}

    def visit(Y, j):
        info["nodes"] += 1
        if info["nodes"] > budget:
            raise CapExceeded(f"summand search exceeded its budget of {budget} nodes", partial=info)
        info["max_level"] = max(info["max_level"], j)
        if j >= k:
            return Y
        pj = p**j
        R = ric.residual(Y, p ** (j + 1))
        if any(x % pj for x in R):
            raise AssertionError("Riccati residual not divisible at the current level")
        rhs = np.array([(-(x // pj)) % p for x in R], dtype=np.int64)
        part, kern, cert = fp.solve_certified(ric.L, rhs, p)
        if cert is not None:
            info["dead_ends"].append({
                "level": j,
                "Y": [list(r) for r in Y],
                "certificate_verified": fp.check_certificate(ric.L, rhs, cert, p),
            })
            return None
        for coeffs in product(range(p), repeat=len(kern)):
            z = list(part)
            for a, v in zip(coeffs, kern):
                if a:
                    z = [(x + a * y) % p for x, y in zip(z, v)]
            Y2 = [[Y[i][m] + pj * z[i * t + m] for m in range(t)] for i in range(s)]
            got = visit(Y2, j + 1)
            if got is not None:
                return got
        return None

    Y = visit([list(r) for r in ric.y0], 1)
    if Y is None:
        return None, info
    summand = ric.summand(Y)
    return summand, info


def padic_irreducible(rep, k=None, budget=None, cap=None):
    """Invariant free summand search up to precision ``k`` (default: the rep's own)."""
    k = rep.k if k is None else k
    p, dim = rep.p, rep.degree
    gens = _mod_p_gens(rep)
    try:
        subs = invariant_subspaces(gens, p, dim, cap)
    except CapExceeded as exc:
        return IrredVerdict("Inconclusive", None, k, "subspace enumeration", trace={"reason": str(exc)})
    trace = {"subspaces": len(subs), "searches": []}
    for sub in subs:
        try:
            summand, info = summand_search(sub, rep, k, budget)
        except CapExceeded as exc:
            trace["searches"].append(exc.partial)
            return IrredVerdict("Inconclusive", None, k, "summand search budget", trace=trace)
        trace["searches"].append(info)
        if summand is not None:
            mats = [g.reduce(k) for g in rep.group.elements]
            if not (summand.is_free() and summand.is_invariant(mats)):
                raise AssertionError("summand failed re-verification")
            return IrredVerdict("Reducible", summand, k, "free summand lift", trace=trace)
    return IrredVerdict("IrreducibleUpToPrecision", None, k, "free summand lift", trace=trace)


def eigenlines(g, cap=None):
    """Invariant rank-1 free summands of one matrix over Z/p^k.

    A primitive v with v g = lam v exists iff lam is a root of the
    characteristic polynomial and the left kernel of g - lam contains a
    vector that is nonzero mod p.  Roots come from a Hensel factorisation
    when the mod-p factors are coprime, else from enumeration.
    """
    cap = default_cap(1 << 20) if cap is None else cap
    ring = g.ring
    f = charpoly(g)
    fac = hensel_factor(f, ring)
    if isinstance(fac, Inapplicable):
        cands = roots(f, ring, cap)
        method = "root enumeration"
    else:
        cands = sorted((-h[0]) % ring.modulus for h in fac if len(h) == 2)
        method = "hensel"
    lines = []
    n = g.nrows
    for lam in cands:
        shifted = g - ZpkMatrix.identity(ring, n).scale(lam)
        for v in left_kernel(shifted):
            if any(x % ring.p for x in v):
                lines.append((lam, tuple(v)))
                break
    return {"charpoly": f, "method": method, "roots": cands, "lines": lines}
