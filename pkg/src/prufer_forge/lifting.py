"""Lifting a representation from Z/p^k to Z/p^(k+1).

Choose the canonical (balanced) preimage R(g) of every image.  The defect

    R(g) R(h) R(gh)^-1 = I + p^k c(g, h)

is a 2-cocycle with values in M_r(F_p) under conjugation.  Corrected lifts
(I - p^k X_g) R(g) form a homomorphism iff

    c(g, h) = X_g + g X_h g^-1 - X_gh      over F_p.

It suffices to impose this for h running over the generators: the other
pairs follow by induction on word length.  The unknowns X_g are eliminated
along the BFS spanning tree of the group, leaving X_e and X_s (s a
generator) free, so the linear system that is actually solved has
(1 + #generators) r^2 unknowns and one block of r^2 equations per non-tree
product g*s.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import fp
from .errors import CapExceeded, default_cap
from .groups import FiniteMatrixGroup, close
from .reps import Representation
from .zpk import RingSpec, ZpkMatrix, _mul_rows, invert

DEFAULT_UNKNOWN_CAP = 50_000
DEFAULT_NODE_BUDGET = 10_000


@dataclass(frozen=True)
class LiftProblem:
    rep: Representation

    @property
    def target(self):
        return self.rep.k + 1


def _array(mats, modulus, r):
    dtype = np.int64 if modulus * modulus * r < 2**62 else object
    return np.array([m.rows for m in mats], dtype=dtype).reshape(len(mats), r, r)


class LiftSystem:
    """The reduced linear system for one lifting step, plus what is needed to use a solution."""

    def __init__(self, rep, cap=None):
        cap = default_cap(DEFAULT_UNKNOWN_CAP) if cap is None else cap
        G = rep.group
        self.rep = rep
        n, r = G.order, G.degree
        if n * r * r > cap:
            raise CapExceeded(f"{n * r * r} lift unknowns exceed the cap {cap}")
        p, k = rep.p, rep.k
        self.p, self.k, self.r, self.n = p, k, r, n
        self.ring1 = RingSpec(p, k + 1)
        q1 = self.ring1.modulus
        pk = p**k
        rr = r * r

        hats = [m.lift(k + 1) for m in G.elements]
        self.hats = hats
        H = _array(hats, q1, r)
        red = np.array([[[x % p for x in row] for row in m.rows] for m in G.elements], dtype=np.int64)
        inv = [G.index[invert(m).rows] for m in G.elements]
        rinv = red[inv]

        gens = list(G.generators)
        self.gens = gens
        free = [0] + [s for s in dict.fromkeys(gens) if s != 0]
        self.free = free
        slot = {e: i for i, e in enumerate(free)}
        N = len(free) * rr
        self.N = N

        # g*s for every element and generator, and the defect c(g, s)
        q = G.ring.modulus
        rows = [m.rows for m in G.elements]
        prod_idx = np.array(
            [[G.index[_mul_rows(a, rows[s], q)] for s in gens] for a in rows], dtype=np.int64
        ).reshape(n, len(gens))
        self.prod_idx = prod_idx
        cocycle = np.zeros((n, len(gens), r, r), dtype=np.int64)
        for t, s in enumerate(gens):
            gs = prod_idx[:, t]
            E = (np.matmul(H, H[s]) - H[gs]) % q1
            if np.any(E % pk):
                raise AssertionError("preimage products disagree mod p^k")
            E = (E // pk).astype(np.int64)
            cocycle[:, t] = np.matmul(E, rinv[gs]) % p
        self.cocycle = cocycle

        conj = np.array([np.kron(red[g], rinv[g].T) % p for g in range(n)], dtype=np.int64)
        self.conj = conj

        # affine forms: X_h = F[h][:, :N] f + F[h][:, N]
        F = np.zeros((n, rr, N + 1), dtype=np.int64)
        for e, i in slot.items():
            F[e, :, i * rr:(i + 1) * rr] = np.eye(rr, dtype=np.int64)
        defined = set(free)
        for h in range(1, n):
            if h in defined:
                continue
            g, t = G.parent[h], G.via[h]
            s = gens[t]
            F[h] = (F[g] + conj[g] @ F[s]) % p
            F[h, :, N] = (F[h, :, N] - cocycle[g, t].reshape(rr)) % p
            defined.add(h)
        self.forms = F

        A_rows, b_rows, labels = [], [], []
        for g in range(n):
            for t, s in enumerate(gens):
                h = int(prod_idx[g, t])
                if h not in slot and G.parent[h] == g and G.via[h] == t:
                    continue
                R = (F[g] + conj[g] @ F[s] - F[h]) % p
                R[:, N] = (R[:, N] - cocycle[g, t].reshape(rr)) % p
                A_rows.append(R[:, :N])
                b_rows.append((-R[:, N]) % p)
                labels.extend((g, t, e) for e in range(rr))
        if A_rows:
            self.A = np.concatenate(A_rows)
            self.b = np.concatenate(b_rows)
        else:
            self.A = np.zeros((0, N), dtype=np.int64)
            self.b = np.zeros(0, dtype=np.int64)
        self.labels = labels

        self.particular, self.kernel, self.certificate = fp.solve_certified(self.A, self.b, p)

    @property
    def solvable(self):
        return self.certificate is None

    def check_certificate(self):
        """Re-verify ``y A = 0`` and ``y b != 0`` directly."""
        if self.certificate is None:
            return False
        return fp.check_certificate(self.A, self.b, self.certificate, self.p)

    def coboundaries(self):
        """Reduced-coordinate vectors of X_g = Y - g Y g^-1 for unit matrices Y."""
        rr, p = self.r * self.r, self.p
        out = []
        for j in range(rr):
            y = np.zeros(rr, dtype=np.int64)
            y[j] = 1
            vec = [0] * self.N
            for i, e in enumerate(self.free):
                v = (y - self.conj[e] @ y) % p
                vec[i * rr:(i + 1) * rr] = [int(x) for x in v]
            out.append(tuple(vec))
        return out

    def complement(self):
        """Kernel vectors spanning a complement of the coboundaries, chosen greedily."""
        e = fp.Echelon(self.p, self.N)
        for v in self.coboundaries():
            e.add(v)
        comp = []
        for v in self.kernel:
            if e.add(v) is not None:
                comp.append(tuple(v))
        return comp

    def corrections(self, f):
        """X_h for every element, from reduced coordinates ``f``."""
        fv = np.array(list(f) + [1], dtype=np.int64)
        return (self.forms @ fv) % self.p

    def lifted_images(self, f):
        q1, pk, r = self.ring1.modulus, self.p**self.k, self.r
        X = self.corrections(f).reshape(self.n, r, r)
        H = _array(self.hats, q1, r)
        eye = np.eye(r, dtype=H.dtype)
        L = np.matmul((eye - pk * X.astype(H.dtype)) % q1, H) % q1
        return [ZpkMatrix._raw(self.ring1, tuple(tuple(int(x) for x in row) for row in m), r) for m in L]

    def lifted_rep(self, f, verify=True):
        mats = self.lifted_images(f)
        G = self.rep.group
        group = FiniteMatrixGroup(self.ring1, self.r, mats, G.generators, G.parent, G.via, G._table)
        lifted = Representation(group, f"{self.rep.label} lifted to {self.p}^{self.k + 1}")
        if verify and not verify_table(lifted):
            raise AssertionError("lifted images violate the multiplication table")
        return lifted

    def witness(self):
        """Cocycle values on the generator products used by the certificate."""
        if self.certificate is None:
            return None
        rr = self.r * self.r
        pairs = sorted({self.labels[i][:2] for i in self.certificate})
        pairs_set = set(pairs)
        elements = self.rep.group.elements
        out = []
        rhs = {}
        for i, (g, t, e) in enumerate(self.labels):
            if (g, t) in pairs_set:
                rhs.setdefault((g, t), [0] * rr)[e] = int(self.b[i])
        for g, t in pairs:
            out.append({
                "g": [list(row) for row in elements[g].rows],
                "generator": t,
                "gs": [list(row) for row in elements[int(self.prod_idx[g, t])].rows],
                "cocycle": self.cocycle[g, t].reshape(self.r, self.r).tolist(),
                "reduced_rhs": [rhs[g, t][i * self.r:(i + 1) * self.r] for i in range(self.r)],
            })
        return {
            "certificate": {str(i): v for i, v in self.certificate.items()},
            "certificate_verified": self.check_certificate(),
            "equations": len(self.labels),
            "unknowns": self.N,
            "entries_per_equation": rr,
            "pairs": out,
        }


def verify_table(rep):
    """Every product of two elements matches the table, checked at the rep's own precision."""
    G = rep.group
    t = G.mult_table
    q, r = rep.ring.modulus, rep.degree
    L = _array(G.elements, q, r)
    idx = np.array(t, dtype=np.int64)
    for a in range(G.order):
        P = np.matmul(L[a], L) % q
        if not np.array_equal(P, L[idx[a]]):
            return False
    return True


def cocycle_defect(rep, g, h):
    """c(g, h) for arbitrary elements, computed from scratch (used by property tests)."""
    G = rep.group
    p, k = rep.p, rep.k
    gh = G.mul(g, h)
    a, b, c = (G.elements[i].lift(k + 1) for i in (g, h, gh))
    diff = (a @ b) - c
    E = [[x // p**k for x in row] for row in diff.rows]
    if any(x % p**k for row in diff.rows for x in row):
        raise AssertionError("preimage products disagree mod p^k")
    cinv = G.elements[G.inverse[gh]].reduce(1)
    return ZpkMatrix(RingSpec(p, 1), E) @ cinv


@dataclass
class LiftOutcome:
    status: str
    lifted: Representation | None
    witness: dict | None
    correction_space_dim: int
    system: LiftSystem = field(repr=False)

    @property
    def lifted_images(self):
        return None if self.lifted is None else list(self.lifted.group.elements)

    def to_json(self):
        data = {
            "status": self.status,
            "correction_space_dim": self.correction_space_dim,
            "from_precision": self.system.k,
            "to_precision": self.system.k + 1,
            "unknowns": self.system.N,
            "equations": len(self.system.labels),
        }
        if self.lifted is not None:
            data["lifted_generators"] = [m.to_json() for m in self.lifted.generators]
            data["table_verified"] = True
        if self.witness is not None:
            data["obstruction"] = self.witness
        return data


def lift_once(problem, cap=None):
    rep = problem.rep if isinstance(problem, LiftProblem) else problem
    sys = LiftSystem(rep, cap)
    if not sys.solvable:
        if not sys.check_certificate():
            raise AssertionError("obstruction certificate failed re-verification")
        return LiftOutcome("Obstructed", None, sys.witness(), 0, sys)
    lifted = sys.lifted_rep(sys.particular)
    return LiftOutcome("Lifted", lifted, None, len(sys.kernel), sys)


def lift_to(rep, k_target, cap=None):
    """Repeatedly lift with the particular solution; returns the reps or stops at an obstruction."""
    tower = [rep]
    while tower[-1].k < k_target:
        out = lift_once(tower[-1], cap)
        if out.status != "Lifted":
            break
        tower.append(out.lifted)
    return tower


def hull_search(rep_mod_p, k_max, budget=None, cap=None):
    """Depth-first search for a tower of lifts up to precision ``k_max``.

    At each level the lift choices are the particular solution plus every
    F_p-combination of a fixed complement of the coboundaries inside the
    solution space (conjugate lifts behave identically further up, so only
    one per class is tried).  Branches are taken in lexicographic order of
    the combination coefficients.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    if rep_mod_p.k != 1:
        raise ValueError("hull_search starts from a representation over F_p")
    budget = default_cap(DEFAULT_NODE_BUDGET) if budget is None else budget
    nodes = []
    best = {"level": 1, "rep": rep_mod_p}

    def report(capped):
        top = best["rep"]
        return {
            "k_max": k_max,
            "max_level": best["level"],
            "reached": best["level"] >= k_max,
            "budget": budget,
            "node_count": len(nodes),
            "capped": capped,
            "nodes": nodes,
            "witness_generators": [m.to_json() for m in top.generators],
        }

    def visit(rep, parent, choice):
        if len(nodes) >= budget:
            raise CapExceeded(f"hull search exceeded its budget of {budget} nodes", partial=report(True))
        node = {"id": len(nodes), "parent": parent, "level": rep.k, "choice": list(choice)}
        nodes.append(node)
        if rep.k > best["level"]:
            best["level"], best["rep"] = rep.k, rep
        if rep.k >= k_max:
            node["status"] = "reached"
            return True
        sys = LiftSystem(rep, cap)
        if not sys.solvable:
            if not sys.check_certificate():
                raise AssertionError("obstruction certificate failed re-verification")
            node["status"] = "Obstructed"
            return False
        comp = sys.complement()
        node["status"] = "Lifted"
        node["correction_space_dim"] = len(sys.kernel)
        node["branches"] = sys.p ** len(comp)
        for coeffs in product(range(sys.p), repeat=len(comp)):
            f = list(sys.particular)
            for a, v in zip(coeffs, comp):
                if a:
                    f = [(x + a * y) % sys.p for x, y in zip(f, v)]
            if visit(sys.lifted_rep(f), node["id"], coeffs):
                return True
        return False

    visit(rep_mod_p, None, ())
    return report(False)


NOCANDO_TEXT = (
    "The natural module of GL(2,p) over F_p, p >= 5, has no integral cover: this is "
    "proved mathematically, not by this computation. The tower height reported here "
    "is experimental data only. A finite height neither confirms nor contradicts "
    "that statement, since lifts to Z/p^k for bounded k can exist without any lift "
    "to the p-adic integers."
)


def primitive_root(p):
    phi = p - 1
    primes = [d for d in range(2, phi + 1) if phi % d == 0 and all(d % e for e in range(2, d))]
    return next(g for g in range(2, p) if all(pow(g, phi // d, p) != 1 for d in primes))


def gl2_generators(p):
    ring = RingSpec(p, 1)
    g = primitive_root(p)
    return [ZpkMatrix(ring, [[g, 0], [0, 1]]), ZpkMatrix(ring, [[-1, 1], [-1, 0]])]


def nocando_probe(p, k_max=3, budget=None, slow=False):
    if p < 5:
        raise ValueError("the probe needs p >= 5")
    if p not in (5, 7):
        raise ValueError("only p = 5 and p = 7 are supported")
    if p == 7 and not slow:
        raise ValueError("p = 7 is slow; pass slow=True")
    rep = Representation(close(gl2_generators(p)), f"GL(2,{p})")
    expected = (p * p - 1) * (p * p - p)
    if rep.order != expected:
        raise AssertionError(f"GL(2,{p}) closure has order {rep.order}, expected {expected}")
    try:
        tower = hull_search(rep, k_max, budget)
    except CapExceeded as exc:
        tower = exc.partial
    return {
        "p": p,
        "group_order": rep.order,
        "k_max": k_max,
        "max_level": tower["max_level"],
        "capped": tower["capped"],
        "node_count": tower["node_count"],
        "tower": tower,
        "statement": NOCANDO_TEXT,
    }
