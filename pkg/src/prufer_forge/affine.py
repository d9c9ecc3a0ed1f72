"""Affine split extensions (Z/p^k)^r x| H acting on p^(kr) points.

An element is a pair (t, h) acting on row vectors by x -> x h + t, so
composition (first the left factor) is (t1, h1)(t2, h2) = (t1 h2 + t2, h1 h2).
Points are the vectors of (Z/p^k)^r in lexicographic order, which is also the
enumeration order of the truncation M[p^k] under the fixed bijection.

The group H is always the full group of the representation.  Building at a
level below the representation's precision lets H act through reduction, so
the action on points need not be faithful (``image_order`` then drops).
"""

from .divisible import torsion
from .errors import CapExceeded, default_cap
from .zpk import RingSpec

DEFAULT_AFFINE_CAP = 1 << 16
SUBGROUP_ENUM_CAP = 256


class AffinePermGroup:
    def __init__(self, rep, cap=None, level=None):
        cap = default_cap(DEFAULT_AFFINE_CAP) if cap is None else cap
        level = rep.k if level is None else level
        if not 1 <= level <= rep.k:
            raise ValueError(f"level {level} outside 1..{rep.k}")
        self.rep = rep
        self.ring = RingSpec(rep.p, level)
        self.r = rep.degree
        q = self.ring.modulus
        npts = q**self.r
        if npts * rep.order > cap:
            raise CapExceeded(f"affine group of order {npts * rep.order} exceeds the cap {cap}")
        # the point set is the truncation M[p^k], transported to vectors
        trunc = torsion(self.r, self.ring, cap)
        self.points = [trunc.to_vector(x) for x in trunc]
        self.index = {v: i for i, v in enumerate(self.points)}
        self.hmats = [m.reduce(level).rows for m in rep.group.elements]
        self._perm_cache = {}

    @property
    def order(self):
        return len(self.points) * len(self.hmats)

    @property
    def degree(self):
        return len(self.points)

    def translation_order(self):
        return len(self.points)

    def act(self, x, elt):
        t, h = elt
        q, r = self.ring.modulus, self.r
        m = self.hmats[h]
        return tuple((sum(x[i] * m[i][j] for i in range(r)) + t[j]) % q for j in range(r))

    def perm(self, elt):
        key = elt
        if key not in self._perm_cache:
            self._perm_cache[key] = tuple(self.index[self.act(x, elt)] for x in self.points)
        return self._perm_cache[key]

    def compose(self, a, b):
        """The element acting as ``a`` then ``b``."""
        (t1, h1), (t2, h2) = a, b
        q = self.ring.modulus
        t = self.act(t1, (tuple([0] * self.r), h2))
        t = tuple((x + y) % q for x, y in zip(t, t2))
        return t, self.rep.group.mul(h1, h2)

    def elements(self):
        for h in range(len(self.hmats)):
            for t in self.points:
                yield (t, h)

    def zero(self):
        return tuple([0] * self.r)

    def generators(self):
        z = self.zero()
        gens = [(tuple(int(i == j) for j in range(self.r)), 0) for i in range(self.r)]
        gens += [(z, h) for h in self.rep.group.generators]
        return gens

    def image_order(self):
        """Order of the permutation image (equals ``order`` when the action is faithful)."""
        return len({self.perm(e) for e in self.elements()})

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "rank": self.r,
            "points": len(self.points),
            "order": self.order,
            "translation_order": self.translation_order(),
            "H_order": len(self.hmats),
            "permutation_image_order": self.image_order(),
        }


def build_affine(rep, cap=None, level=None):
    """M_k x| H with M_k = (Z/p^level)^r; ``level`` defaults to the rep's precision."""
    return AffinePermGroup(rep, cap, level)


def _span(vectors, q, r):
    """Subgroup of (Z/q)^r generated by ``vectors``, as a frozenset."""
    members = {tuple([0] * r)}
    for v in vectors:
        mult = []
        w = tuple([0] * r)
        while True:
            mult.append(w)
            w = tuple((a + b) % q for a, b in zip(w, v))
            if w == mult[0]:
                break
        members = {tuple((a + b) % q for a, b in zip(s, m)) for s in members for m in mult}
    return frozenset(members)


def translation_subgroup(g, vectors):
    return _span(vectors, g.ring.modulus, g.r)


def parse_subgroup(g, spec):
    """Subgroup elements for a textual spec.

    ``translations``, ``trivial``, ``stabilizer``, ``congruence`` (p^(k-1) M_k),
    ``congruence:i`` (p^i M_k), or ``vec:a,b;c,d`` (translations generated by
    the listed vectors).
    """
    z = g.zero()
    k = g.ring.k
    if spec == "translations":
        return [(t, 0) for t in g.points]
    if spec == "trivial":
        return [(z, 0)]
    if spec == "stabilizer":
        return [(z, h) for h in range(len(g.hmats))]
    if spec.startswith("congruence"):
        i = int(spec.split(":", 1)[1]) if ":" in spec else k - 1
        if not 0 <= i <= k:
            raise ValueError(f"congruence level {i} outside 0..{k}")
        return [(t, 0) for t in sorted(congruence_kernel(g, i))]
    if spec.startswith("vec:"):
        vecs = []
        for part in spec[4:].split(";"):
            v = tuple(int(x) % g.ring.modulus for x in part.split(","))
            if len(v) != g.r:
                raise ValueError(f"vector {part!r} does not have length {g.r}")
            vecs.append(v)
        return [(t, 0) for t in sorted(translation_subgroup(g, vecs))]
    raise ValueError(f"unknown subgroup spec {spec!r}")


def congruence_kernel(g, i):
    """p^i M_k as a set of translation vectors."""
    p, r = g.ring.p, g.r
    return _span([tuple(p**i * int(a == b) for b in range(r)) for a in range(r)], g.ring.modulus, r)


def orbits(g, sub):
    """Orbit partition of the points under the listed subgroup elements (union-find)."""
    parent = list(range(g.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for elt in sub:
        pm = g.perm(elt)
        for x, y in enumerate(pm):
            a, b = find(x), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks = {}
    for x in range(g.degree):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def regularity_report(g, sub):
    sub = list(sub)
    blocks = orbits(g, sub)
    perms = {g.perm(e) for e in sub}
    n = len(perms)
    # orbit-stabiliser: a point stabiliser is trivial iff its orbit has |sub| points
    semiregular = all(len(b) == n for b in blocks)
    transitive = len(blocks) == 1
    return {
        "subgroup_order": n,
        "orbits": len(blocks),
        "orbit_sizes": sorted(len(b) for b in blocks),
        "transitive": transitive,
        "semiregular": semiregular,
        "regular": transitive and semiregular,
    }


def _conjugate(a, b):
    """b^-1 a b as permutations (b first undone, then a, then b)."""
    inv = [0] * len(b)
    for x, y in enumerate(b):
        inv[y] = x
    return tuple(b[a[inv[x]]] for x in range(len(b)))


def subgroups_of_translations(g, cap=None):
    """Every subgroup of M_k = (Z/p^k)^r, grown one generator at a time."""
    cap = default_cap(SUBGROUP_ENUM_CAP) if cap is None else cap
    if len(g.points) > cap:
        raise CapExceeded(f"|M_k| = {len(g.points)} exceeds the subgroup enumeration cap {cap}")
    q, r = g.ring.modulus, g.r
    start = frozenset({g.zero()})
    found = {start}
    frontier = [start]
    while frontier:
        new = []
        for s in frontier:
            for v in g.points:
                if v not in s:
                    cyc = _span([v], q, r)
                    t = frozenset(tuple((a + b) % q for a, b in zip(x, y)) for x in s for y in cyc)
                    if t not in found:
                        found.add(t)
                        new.append(t)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _is_group(s, q):
    return all(tuple((a + b) % q for a, b in zip(x, y)) in s for x in s for y in s)


def is_h_invariant(g, s):
    return all(g.act(v, (g.zero(), h)) in s for v in s for h in g.rep.group.generators)


def is_normal_translations(g, s):
    """Normality in G, tested by conjugating permutations by the generators of G."""
    perms = {g.perm((v, 0)) for v in s}
    gens = [g.perm(e) for e in g.generators()]
    return all(_conjugate(a, b) in perms for a in perms for b in gens)


def invariant_vs_normal(g):
    subs = subgroups_of_translations(g)
    rows = []
    for s in subs:
        inv, nor = is_h_invariant(g, s), is_normal_translations(g, s)
        rows.append({"order": len(s), "generators_sample": sorted(s)[:4], "h_invariant": inv, "normal": nor})
    discrepancies = [row for row in rows if row["h_invariant"] != row["normal"]]
    return {
        "subgroups": len(subs),
        "h_invariant": sum(row["h_invariant"] for row in rows),
        "normal": sum(row["normal"] for row in rows),
        "discrepancies": discrepancies,
        "equivalence_holds": not discrepancies,
    }


def congruence_quotient(g, kernel_vectors):
    """Action of G on the K-orbits for an H-invariant translation subgroup K."""
    K = frozenset(kernel_vectors)
    q = g.ring.modulus
    if g.zero() not in K or not _is_group(K, q):
        raise ValueError("K is not a subgroup of the translations")
    if not is_h_invariant(g, K):
        raise ValueError("K is not normal in G (not H-invariant)")
    blocks = orbits(g, [(v, 0) for v in K])
    block_of = {}
    for b, pts in enumerate(blocks):
        for x in pts:
            block_of[x] = b
    kernel, images = [], set()
    ident = tuple(range(len(blocks)))
    for e in g.elements():
        pm = g.perm(e)
        bp = tuple(block_of[pm[pts[0]]] for pts in blocks)
        images.add(bp)
        if bp == ident:
            kernel.append(e)
    kernel_translations = {t for t, h in kernel if h == 0}
    report = {
        "K_order": len(K),
        "blocks": len(blocks),
        "block_size": len(blocks[0]),
        "quotient_order": len(images),
        "kernel_order": len(kernel),
        "kernel_contains_K": K <= kernel_translations,
        "kernel_equals_K": len(kernel) == len(K) and kernel_translations == K,
        "kernel_translations_equal_K": kernel_translations == K,
    }
    k = g.ring.k
    if k >= 2 and K == congruence_kernel(g, k - 1):
        report.update(_compare_lower(g, blocks, block_of))
    return report


def _compare_lower(g, blocks, block_of):
    """Compare G acting on the K-blocks with the extension one level lower (same H).

    The natural map (t, h) -> (t mod p^(k-1), h) is checked to be a surjective
    homomorphism with kernel exactly K, intertwining the block action with the
    lower extension's point action.
    """
    lower = AffinePermGroup(g.rep, level=g.ring.k - 1)
    qlow = lower.ring.modulus

    def down(e):
        t, h = e
        return tuple(a % qlow for a in t), h

    # block b holds the points reducing to one vector mod p^(k-1)
    label = [lower.index[tuple(a % qlow for a in g.points[pts[0]])] for pts in blocks]
    intertwines, image, kernel = True, set(), []
    for e in g.elements():
        pm, d = g.perm(e), down(e)
        image.add(d)
        if d == (lower.zero(), 0):
            kernel.append(e)
        low = lower.perm(d)
        if any(label[block_of[pm[pts[0]]]] != low[label[b]] for b, pts in enumerate(blocks)):
            intertwines = False
    gens = list(g.generators())
    hom = all(down(g.compose(a, b)) == lower.compose(down(a), down(b)) for a in gens for b in g.elements())
    K = congruence_kernel(g, g.ring.k - 1)
    return {
        "lower_extension_order": lower.order,
        "natural_map_homomorphism": hom,
        "natural_map_surjective": len(image) == lower.order,
        "natural_map_kernel_equals_K": {t for t, h in kernel if h == 0} == K and all(h == 0 for _, h in kernel),
        "matches_lower_extension": intertwines and hom and len(image) == lower.order,
    }
