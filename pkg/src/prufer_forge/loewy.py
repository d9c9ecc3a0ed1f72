"""The group algebra F_pH: Jacobson radical, socles and Loewy series.

Algebra elements are coefficient vectors indexed by the elements of a
``FiniteMatrixGroup``.  Modules are right modules: ``x -> x @ rho(a)``.
"""

from dataclasses import dataclass

from . import fp
from .errors import CapExceeded, default_cap
from .groups import close
from .irreducibility import meataxe
from .zpk import RingSpec, ZpkMatrix

MAX_GROUP_ORDER = 200

BOUND_NOTE = (
    "Finite check of dim M <= |H| * dim Soc M. For infinite-dimensional "
    "modules the statement is that a nonzero module has a nonzero socle and "
    "finite socle forces finite dimension; only the finite bound is tested here."
)


class AlgebraModule:
    """A right F_pH-module given by the action of each generator of ``group``."""

    def __init__(self, p, dim, action, group=None):
        self.p = p
        self.dim = dim
        self.action = [tuple(tuple(int(x) % p for x in row) for row in g) for g in action]
        for g in self.action:
            if len(g) != dim or any(len(row) != dim for row in g):
                raise ValueError(f"action matrix is not {dim}x{dim}")
        if group is None:
            ring = RingSpec(p, 1)
            group = close([ZpkMatrix(ring, g) for g in self.action]) if dim else None
        elif len(group.generators) != len(self.action):
            raise ValueError("need one action matrix per group generator")
        self.group = group
        self._images = None

    @classmethod
    def from_json(cls, data, group=None):
        return cls(int(data["p"]), int(data["dim"]), data["action"], group)

    def to_json(self):
        return {"p": self.p, "dim": self.dim, "action": [[list(r) for r in g] for g in self.action]}

    def element_images(self):
        """rho(h) for every group element, built along the BFS tree."""
        if self._images is None:
            p = self.p
            self._images = self.group.evaluate(
                self.action, lambda a, b: fp.mat_mul(a, b, p), fp.identity(self.dim)
            )
        return self._images

    def algebra_action(self, a):
        """rho(a) for a coefficient vector ``a`` over the group elements."""
        p, n = self.p, self.dim
        out = [[0] * n for _ in range(n)]
        for c, m in zip(a, self.element_images()):
            if c:
                for i in range(n):
                    row, src = out[i], m[i]
                    for j in range(n):
                        row[j] += c * src[j]
        return tuple(tuple(x % p for x in row) for row in out)

    def submodule(self, basis):
        sub, _, _, _ = fp.split_action(basis, self.action, self.p, self.dim)
        return AlgebraModule(self.p, len(basis), sub, self.group)

    def quotient(self, basis):
        _, quot, _, _ = fp.split_action(basis, self.action, self.p, self.dim)
        return AlgebraModule(self.p, self.dim - len(basis), quot, self.group)


def direct_sum(*mods):
    p, group = mods[0].p, mods[0].group
    dim = sum(m.dim for m in mods)
    action = []
    for t in range(len(group.generators)):
        rows, off = [], 0
        for m in mods:
            for row in m.action[t]:
                rows.append((0,) * off + tuple(row) + (0,) * (dim - off - m.dim))
            off += m.dim
        action.append(tuple(rows))
    return AlgebraModule(p, dim, action, group)


def regular_module(group, p):
    """F_pH acting on itself by right multiplication, basis = group elements."""
    n = group.order
    cap = default_cap(MAX_GROUP_ORDER)
    if n > cap:
        raise CapExceeded(f"|H| = {n} exceeds the regular-module cap {cap}")
    t = group.mult_table
    action = []
    for s in group.generators:
        action.append(tuple(tuple(int(t[h][s] == j) for j in range(n)) for h in range(n)))
    return AlgebraModule(p, n, action, group)


def algebra_product(group, a, b, p):
    t = group.mult_table
    out = [0] * group.order
    for g, x in enumerate(a):
        if x:
            row = t[g]
            for h, y in enumerate(b):
                if y:
                    out[row[h]] += x * y
    return tuple(v % p for v in out)


def composition_factors(module, seed=0):
    """Chop a module into irreducible factors with repeated MeatAxe calls."""
    out = []
    stack = [module]
    while stack:
        m = stack.pop()
        if m.dim == 0:
            continue
        v = meataxe(m.action, m.p, m.dim, seed)
        if v.status == "Irreducible":
            out.append(m)
        elif v.status == "Reducible":
            stack.append(m.submodule(v.witness))
            stack.append(m.quotient(v.witness))
        else:
            raise CapExceeded(f"MeatAxe inconclusive on a factor of dimension {m.dim}")
    return out


@dataclass(frozen=True)
class RadicalBasis:
    group: object
    p: int
    basis: tuple
    factor_dims: tuple
    nilpotency_index: int

    @property
    def dim(self):
        return len(self.basis)

    def to_json(self):
        return {
            "p": self.p,
            "group_order": self.group.order,
            "dim": self.dim,
            "basis": [list(v) for v in self.basis],
            "composition_factor_dims": list(self.factor_dims),
            "nilpotency_index": self.nilpotency_index,
        }


def ideal_power(group, basis, i, p):
    """A basis of J^i (J^0 is the whole algebra)."""
    n = group.order
    cur = fp.identity(n)
    for _ in range(i):
        prods = [algebra_product(group, a, b, p) for a in cur for b in basis]
        cur = fp.rref(prods, p, n) if prods else ()
        if not cur:
            break
    return cur


def radical(group, p, seed=0):
    """Rad(F_pH) as the common annihilator of the composition factors of the regular module."""
    reg = regular_module(group, p)
    factors = composition_factors(reg, seed)
    distinct = {}
    for f in factors:
        distinct.setdefault(tuple(f.action), f)
    n = group.order
    rows = []
    for f in distinct.values():
        imgs = f.element_images()
        for i in range(f.dim):
            for j in range(f.dim):
                rows.append(tuple(m[i][j] for m in imgs))
    basis = tuple(fp.rref(fp.nullspace(rows, p, n), p, n))
    # nilpotency: powers of J shrink to zero
    index, cur = 0, fp.identity(n)
    while cur:
        index += 1
        if index > n + 1:
            raise AssertionError("radical is not nilpotent")
        prods = [algebra_product(group, a, b, p) for a in cur for b in basis]
        cur = fp.rref(prods, p, n) if prods else ()
    return RadicalBasis(group, p, basis, tuple(sorted(f.dim for f in factors)), index)


def annihilator(module, elements):
    """{x : x rho(a) = 0 for every a in ``elements``}."""
    if not elements:
        return fp.identity(module.dim)
    mats = [module.algebra_action(a) for a in elements]
    concat = tuple(tuple(x for m in mats for x in m[i]) for i in range(module.dim))
    return tuple(fp.rref(fp.left_nullspace(concat, module.p, module.dim), module.p, module.dim))


def socle(module, J):
    return annihilator(module, J.basis)


@dataclass(frozen=True)
class LoewySeries:
    layers: tuple  # L_0 = 0, L_1, ..., L_m = M as echelon bases
    cross_checked: bool

    @property
    def length(self):
        return len(self.layers) - 1

    def to_json(self):
        return {
            "length": self.length,
            "dims": [len(b) for b in self.layers],
            "layers": [[list(v) for v in b] for b in self.layers],
            "cross_checked": self.cross_checked,
        }


def loewy_series(module, J):
    """L_(i+1)/L_i = Soc(M/L_i), cross-checked against L_i = {x : x J^i = 0}."""
    p, n = module.p, module.dim
    layers = [()]
    while len(layers[-1]) < n:
        cur = layers[-1]
        if cur:
            _, quot, full, _ = fp.split_action(cur, module.action, p, n)
            q = AlgebraModule(p, n - len(cur), quot, module.group)
            soc = socle(q, J)
            comp = full[len(cur):]
            lifted = [fp.vec_mat(v, comp, p) for v in soc]
        else:
            lifted = list(socle(module, J))
        nxt = tuple(fp.rref(list(cur) + lifted, p, n))
        if len(nxt) == len(cur):
            raise AssertionError("socle of a nonzero module came out zero")
        layers.append(nxt)
    ok = all(
        annihilator(module, ideal_power(module.group, J.basis, i, p)) == layers[i]
        for i in range(len(layers))
    )
    return LoewySeries(tuple(layers), ok)


def check_lemma_bound(module, J=None):
    group = module.group
    if J is None:
        J = radical(group, module.p)
    soc = socle(module, J)
    bound = group.order * len(soc)
    return {
        "passed": module.dim <= bound,
        "dim_module": module.dim,
        "dim_algebra": group.order,
        "dim_socle": len(soc),
        "note": BOUND_NOTE,
    }
