"""Finite matrix groups over Z/p^k.

A group is stored as its closed element list (identity first, then BFS order
from the generators as given) together with a multiplication table of
indices.  The BFS spanning tree is kept too: element ``i`` was first found
as ``elements[parent[i]] @ generators[via[i]]``.
"""

from itertools import permutations
from math import factorial, lcm

from .errors import CapExceeded, NotUnit, default_cap
from .zpk import ZpkMatrix, _mul_rows, block_diag, is_invertible

DEFAULT_CLOSURE_CAP = 10_000


class FiniteMatrixGroup:
    def __init__(self, ring, degree, elements, generators, parent, via, table=None):
        self.ring = ring
        self.degree = degree
        self.elements = tuple(elements)
        self.generators = tuple(generators)  # indices into elements
        self.parent = tuple(parent)
        self.via = tuple(via)
        self.index = {m.rows: i for i, m in enumerate(self.elements)}
        self._table = table
        self._inverse = None

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteMatrixGroup order={self.order} degree={self.degree} over Z/{self.ring.p}^{self.ring.k}>"

    @property
    def generator_matrices(self):
        return [self.elements[i] for i in self.generators]

    @property
    def mult_table(self):
        if self._table is None:
            q = self.ring.modulus
            rows = [m.rows for m in self.elements]
            index = self.index
            table = []
            for a in rows:
                table.append([index[_mul_rows(a, b, q)] for b in rows])
            self._table = table
        return self._table

    def mul(self, i, j):
        return self.mult_table[i][j]

    @property
    def inverse(self):
        if self._inverse is None:
            table = self.mult_table
            self._inverse = tuple(row.index(0) for row in table)
        return self._inverse

    def lookup(self, m):
        return self.index[m.rows]

    def element_order(self, i):
        n, j = 1, i
        while j != 0:
            j = self.mul(j, i)
            n += 1
        return n

    def words(self):
        """Generator-index words reproducing each element along the BFS tree."""
        out = [()]
        for i in range(1, len(self.elements)):
            out.append(out[self.parent[i]] + (self.via[i],))
        return out

    def evaluate(self, gen_images, mul, identity):
        """Images of every element under a map given on generators.

        ``gen_images[t]`` is the image of generator ``t``; elements are built
        along the BFS tree, so this is only a homomorphism if the images
        satisfy the group's relations.
        """
        out = [identity]
        for i in range(1, len(self.elements)):
            out.append(mul(out[self.parent[i]], gen_images[self.via[i]]))
        return out

    def to_json(self, elements=False):
        data = {
            "ring": self.ring.to_json(),
            "generators": [self.elements[i].to_json() for i in self.generators],
            "order": self.order,
            "degree": self.degree,
        }
        if elements:
            data["elements"] = [list(map(list, m.rows)) for m in self.elements]
        return data


def close(generators, cap=None):
    """Closure of a list of invertible matrices under multiplication."""
    cap = default_cap(DEFAULT_CLOSURE_CAP) if cap is None else cap
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator (the identity will do)")
    ring = generators[0].ring
    n = generators[0].nrows
    for g in generators:
        if g.ring != ring or g.shape != (n, n):
            raise ValueError("generators must be square over one ring")
        if not is_invertible(g):
            raise NotUnit(f"generator {g} is singular modulo {ring.p}")
    q = ring.modulus
    ident = ZpkMatrix.identity(ring, n)
    elements = [ident.rows]
    index = {ident.rows: 0}
    parent, via = [-1], [-1]
    grows = [g.rows for g in generators]
    i = 0
    while i < len(elements):
        a = elements[i]
        for t, b in enumerate(grows):
            c = _mul_rows(a, b, q)
            if c not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"group closure exceeds cap {cap}")
                index[c] = len(elements)
                elements.append(c)
                parent.append(i)
                via.append(t)
        i += 1
    gen_idx = [index[g] for g in grows]
    mats = [ZpkMatrix._raw(ring, e, n) for e in elements]
    return FiniteMatrixGroup(ring, n, mats, gen_idx, parent, via)


def close_integral(generators, cap=None):
    """Closure of integer matrices over Z; raises CapExceeded if it is too big."""
    cap = default_cap(DEFAULT_CLOSURE_CAP) if cap is None else cap
    gens = [tuple(tuple(int(a) for a in r) for r in g) for g in generators]
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        a = elements[i]
        for b in gens:
            cols = tuple(zip(*b))
            c = tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)
            if c not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"integral closure exceeds cap {cap}; group may be infinite")
                seen.add(c)
                elements.append(c)
        i += 1
    return elements


class Subgroup:
    """A subgroup of a FiniteMatrixGroup, as sorted element indices."""

    def __init__(self, parent, indices):
        self.parent = parent
        self.indices = tuple(sorted(set(indices)))
        self._set = frozenset(self.indices)

    def __len__(self):
        return len(self.indices)

    @property
    def order(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self._set

    def __iter__(self):
        return iter(self.indices)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def is_closed(self):
        t = self.parent.mult_table
        return 0 in self._set and all(t[a][b] in self._set for a in self.indices for b in self.indices)

    def is_normal(self):
        g = self.parent
        t, inv = g.mult_table, g.inverse
        return all(t[t[inv[x]][h]][x] in self._set for x in range(g.order) for h in self.indices)

    def is_abelian(self):
        t = self.parent.mult_table
        return all(t[a][b] == t[b][a] for a in self.indices for b in self.indices)

    def exponent(self):
        e = 1
        for i in self.indices:
            e = lcm(e, self.parent.element_order(i))
        return e

    def matrices(self):
        return [self.parent.elements[i] for i in self.indices]


def subgroup_generated(group, indices):
    """Subgroup generated by the given element indices (closure in the table)."""
    t = group.mult_table
    gens = list(dict.fromkeys(indices))
    members = [0]
    seen = {0}
    i = 0
    while i < len(members):
        a = members[i]
        for g in gens:
            c = t[a][g]
            if c not in seen:
                seen.add(c)
                members.append(c)
        i += 1
    return Subgroup(group, members)


def sym_elements(s):
    """Sym(s) in lexicographic one-line order."""
    return list(permutations(range(s)))


def block_permutation(ring, d, perm):
    """Matrix sending block i to block perm[i] (row-vector convention)."""
    s = len(perm)
    rows = [[0] * (d * s) for _ in range(d * s)]
    for i, j in enumerate(perm):
        for a in range(d):
            rows[i * d + a][j * d + a] = 1
    return ZpkMatrix(ring, rows)


def wreath_imprimitive(base, s, cap=None):
    """base wr Sym(s) in its imprimitive action on s blocks of size d."""
    if s < 1:
        raise ValueError("s must be >= 1")
    cap = default_cap(DEFAULT_CLOSURE_CAP) if cap is None else cap
    expected = base.order**s * factorial(s)
    if expected > cap:
        raise CapExceeded(f"wreath product order {expected} exceeds cap {cap}")
    ring, d = base.ring, base.degree
    ident = ZpkMatrix.identity(ring, d)
    gens = [block_diag(g, *([ident] * (s - 1))) for g in base.generator_matrices]
    if s >= 2:
        gens.append(block_permutation(ring, d, (1, 0) + tuple(range(2, s))))
    if s >= 3:
        gens.append(block_permutation(ring, d, tuple(range(1, s)) + (0,)))
    return close(gens, cap)


def direct_sum(g1, g2, cap=None):
    """Block-diagonal group generated by diag(a, I) and diag(I, b)."""
    if g1.ring != g2.ring:
        raise ValueError("direct sum needs a common ring")
    i1 = ZpkMatrix.identity(g1.ring, g1.degree)
    i2 = ZpkMatrix.identity(g2.ring, g2.degree)
    gens = [block_diag(a, i2) for a in g1.generator_matrices]
    gens += [block_diag(i1, b) for b in g2.generator_matrices]
    return close(gens, cap)


def map_elements(group, fn):
    """Apply an automorphism of GL elementwise, keeping indices and table."""
    mats = [fn(m) for m in group.elements]
    return FiniteMatrixGroup(
        group.ring, group.degree, mats, group.generators, group.parent, group.via, group._table
    )
