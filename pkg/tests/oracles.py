"""Brute-force oracles shared by the tests. Nothing here imports the package's algorithms."""

from itertools import product


def span(rows, q, ncols):
    """All Z/q-combinations of ``rows``."""
    out = {(0,) * ncols}
    for r in rows:
        multiples = {tuple(c * x % q for x in r) for c in range(q)}
        out = {tuple((a + b) % q for a, b in zip(s, m)) for s in out for m in multiples}
    return out


def solutions(A, b, q, ncols):
    """Every x with A x = b mod q."""
    out = set()
    for x in product(range(q), repeat=ncols):
        if all(sum(a * v for a, v in zip(row, x)) % q == bi % q for row, bi in zip(A, b)):
            out.add(x)
    return out


def matmul(a, b, q):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in zip(*b)) for row in a)


def matpow(a, n, q):
    size = len(a)
    out = tuple(tuple(int(i == j) for j in range(size)) for i in range(size))
    for _ in range(n):
        out = matmul(out, a, q)
    return out


def c5_lift_candidates():
    """Count X over F_5 with (u (I + 5X))^5 = I mod 25 for u the unipotent generator."""
    u = ((1, 1), (0, 1))
    ident = ((1, 0), (0, 1))
    good = 0
    for x in product(range(5), repeat=4):
        X = ((x[0], x[1]), (x[2], x[3]))
        lift = matmul(u, tuple(tuple(ident[i][j] + 5 * X[i][j] for j in range(2)) for i in range(2)), 25)
        if matpow(lift, 5, 25) == ident:
            good += 1
    return good


def invariant_subspaces_brute(gens, p, dim):
    """Every invariant subspace (including 0 and the whole space), as frozensets of vectors."""
    vectors = list(product(range(p), repeat=dim))

    def act(v, g):
        return tuple(sum(v[i] * g[i][j] for i in range(dim)) % p for j in range(dim))

    subs = set()
    for v in vectors:
        for w in vectors:
            # a span is invariant iff the images of a generating list stay inside it
            gl = [v, w]
            while True:
                sp = span(gl, p, dim)
                missing = [act(x, g) for x in gl for g in gens if act(x, g) not in sp]
                if not missing:
                    break
                gl.append(missing[0])
            subs.add(frozenset(sp))
    return subs


def cyclic_submodule(v, gens, p, dim):
    """The smallest invariant subspace containing ``v``, as a set of vectors."""

    def act(x, g):
        return tuple(sum(x[i] * g[i][j] for i in range(dim)) % p for j in range(dim))

    gl = [tuple(v)]
    while True:
        sp = span(gl, p, dim)
        missing = [act(x, g) for x in gl for g in gens if act(x, g) not in sp]
        if not missing:
            return sp
        gl.append(missing[0])


def socle_brute(gens, p, dim):
    """Sum of all simple submodules: a cyclic submodule is simple iff each nonzero member spins all of it."""
    spins = {}
    for v in product(range(p), repeat=dim):
        if any(v):
            spins[v] = frozenset(cyclic_submodule(v, gens, p, dim))
    simple = [s for v, s in spins.items() if all(len(spins[w]) == len(s) for w in s if any(w))]
    total = [v for s in simple for v in s]
    return span(total, p, dim) if total else {(0,) * dim}
