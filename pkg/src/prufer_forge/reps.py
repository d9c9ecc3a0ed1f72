"""Representations at p-adic precision k: reduction, duals, reduction kernels.

A ``Representation`` is identified with its image group in GL(r, Z/p^k); the
abstract group never appears separately.
"""

from dataclasses import dataclass, field

from .groups import FiniteMatrixGroup, Subgroup, close
from .zpk import ZpkMatrix


@dataclass(frozen=True)
class Representation:
    group: FiniteMatrixGroup
    label: str = ""

    @classmethod
    def from_generators(cls, gens, ring, label="", cap=None):
        mats = [g if isinstance(g, ZpkMatrix) else ZpkMatrix(ring, g) for g in gens]
        return cls(close(mats, cap), label)

    @property
    def ring(self):
        return self.group.ring

    @property
    def p(self):
        return self.group.ring.p

    @property
    def k(self):
        return self.group.ring.k

    @property
    def degree(self):
        return self.group.degree

    @property
    def order(self):
        return self.group.order

    @property
    def generators(self):
        return self.group.generator_matrices

    def to_json(self, elements=False):
        data = self.group.to_json(elements)
        data["label"] = self.label
        return data


def reduce_mod(rep, j, cap=None):
    """Entrywise reduction to Z/p^j; the result is the closure of the reduced generators."""
    if not 1 <= j <= rep.k:
        raise ValueError(f"need 1 <= j <= {rep.k}, got {j}")
    if j == rep.k:
        return rep
    return Representation(close([g.reduce(j) for g in rep.generators], cap), f"{rep.label} mod {rep.p}^{j}")


@dataclass(frozen=True)
class KernelReport:
    """The subgroup {g : g = I mod p^j} with structure flags derived from it."""

    kernel: Subgroup
    j: int
    is_trivial: bool = field(init=False)
    order: int = field(init=False)
    exponent: int = field(init=False)
    is_abelian: bool = field(init=False)
    is_elementary_abelian_2: bool = field(init=False)

    def __post_init__(self):
        k = self.kernel
        exp = k.exponent()
        ab = k.is_abelian()
        object.__setattr__(self, "is_trivial", k.order == 1)
        object.__setattr__(self, "order", k.order)
        object.__setattr__(self, "exponent", exp)
        object.__setattr__(self, "is_abelian", ab)
        object.__setattr__(self, "is_elementary_abelian_2", ab and exp <= 2)

    def to_json(self):
        return {
            "j": self.j,
            "order": self.order,
            "exponent": self.exponent,
            "is_trivial": self.is_trivial,
            "is_abelian": self.is_abelian,
            "is_elementary_abelian_2": self.is_elementary_abelian_2,
            "elements": [list(map(list, m.rows)) for m in self.kernel.matrices()],
        }


def reduction_kernel(rep, j):
    if not 1 <= j <= rep.k:
        raise ValueError(f"need 1 <= j <= {rep.k}, got {j}")
    members = [i for i, m in enumerate(rep.group.elements) if m.reduce(j).is_identity()]
    return KernelReport(Subgroup(rep.group, members), j)


@dataclass(frozen=True)
class Theorem5Verdict:
    passed: bool
    p: int
    kernel: KernelReport
    counterexample: int | None
    note: str

    def to_json(self):
        data = {
            "verdict": "PASS" if self.passed else "FAIL",
            "p": self.p,
            "kernel": self.kernel.to_json(),
            "note": self.note,
        }
        if self.counterexample is not None:
            m = self.kernel.kernel.parent.elements[self.counterexample]
            data["counterexample"] = [list(r) for r in m.rows]
        return data


_THM5_NOTE = (
    "Reduction kernel at j=1 must be trivial for odd p and elementary abelian "
    "for p=2 when H acts on the whole divisible group. A FAIL means the "
    "truncated data does not come from such an action (or a bug); it is a "
    "diagnostic, not a counterexample to the theorem."
)


def check_theorem5(rep):
    """Odd p: faithful on M[p]; p = 2: the kernel on M[2] is elementary abelian."""
    rk = reduction_kernel(rep, 1)
    group = rep.group
    bad = None
    if rep.p != 2:
        bad = next((i for i in rk.kernel if i != 0), None)
    else:
        bad = next((i for i in rk.kernel if group.element_order(i) > 2), None)
        if bad is None and not rk.is_abelian:
            t = group.mult_table
            bad = next(a for a in rk.kernel for b in rk.kernel if t[a][b] != t[b][a])
    return Theorem5Verdict(bad is None, rep.p, rk, bad, _THM5_NOTE)


def dual_rep(rep):
    """The contragredient: every element replaced by its inverse-transpose."""
    g = rep.group
    inv = g.inverse
    images = [g.elements[inv[i]].transpose() for i in range(g.order)]
    dual = FiniteMatrixGroup(g.ring, g.degree, images, g.generators, g.parent, g.via, g._table)
    return Representation(dual, f"dual({rep.label})")


def dual_cover_check(rep):
    """Reduce-then-dualise and dualise-then-reduce give the same generators."""
    if rep.k < 2:
        raise ValueError("dual_cover_check needs precision k >= 2")
    route_a = reduce_mod(dual_rep(rep), 1).generators
    route_b = dual_rep(reduce_mod(rep, 1)).generators
    agree = len(route_a) == len(route_b) and all(a == b for a, b in zip(route_a, route_b))
    return {
        "agree": agree,
        "dual_then_reduce": [[list(r) for r in m.rows] for m in route_a],
        "reduce_then_dual": [[list(r) for r in m.rows] for m in route_b],
    }
