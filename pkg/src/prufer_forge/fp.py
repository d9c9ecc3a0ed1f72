"""Dense linear algebra over the prime field F_p.

Matrices are tuples of row tuples; vectors are tuples.  Everything acts on
row vectors from the right, ``v -> v @ g``.
"""

import numpy as np


def mat_mul(a, b, p):
    if not b:
        return tuple(() for _ in a)
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def vec_mat(v, g, p):
    n = len(g[0]) if g else 0
    out = [0] * n
    for vi, row in zip(v, g):
        if vi:
            for j, gij in enumerate(row):
                out[j] += vi * gij
    return tuple(x % p for x in out)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a, ncols=None):
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


class Echelon:
    """Incrementally maintained reduced echelon basis of a subspace."""

    def __init__(self, p, dim):
        self.p = p
        self.dim = dim
        self.pivots = {}  # pivot column -> normalised row (list)

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for c, row in self.pivots.items():
            f = v[c]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v):
        """Insert ``v``; return the reduced new basis row or None if dependent."""
        p = self.p
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return None
        inv = pow(v[c], -1, p)
        v = [x * inv % p for x in v]
        for pc, row in self.pivots.items():
            f = row[c]
            if f:
                self.pivots[pc] = [(a - f * b) % p for a, b in zip(row, v)]
        self.pivots[c] = v
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def __len__(self):
        return len(self.pivots)

    def basis(self):
        return tuple(tuple(self.pivots[c]) for c in sorted(self.pivots))


def rref(rows, p, dim=None):
    if dim is None:
        dim = len(rows[0]) if rows else 0
    e = Echelon(p, dim)
    for r in rows:
        e.add(r)
    return e.basis()


def rank(rows, p):
    return len(rref(rows, p))


def pivot_columns(basis):
    return tuple(next(i for i, x in enumerate(r) if x) for r in basis)


def spin(vectors, gens, p, dim):
    """Smallest subspace containing ``vectors`` and closed under ``v -> v @ g``."""
    e = Echelon(p, dim)
    queue = []
    for v in vectors:
        w = e.add(v)
        if w is not None:
            queue.append(tuple(v))
    while queue:
        v = queue.pop()
        for g in gens:
            w = vec_mat(v, g, p)
            if e.add(w) is not None:
                queue.append(w)
        if len(e) == dim:
            break
    return e.basis()


def nullspace(a, p, ncols):
    """Basis of ``{x : a @ x = 0}`` (x a column vector of length ``ncols``)."""
    e = Echelon(p, ncols)
    for r in a:
        e.add(r)
    piv = sorted(e.pivots)
    free = [c for c in range(ncols) if c not in e.pivots]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for c in piv:
            x[c] = -e.pivots[c][f] % p
        out.append(tuple(x))
    return out


def left_nullspace(a, p, nrows):
    """Basis of ``{y : y @ a = 0}`` for ``a`` with ``nrows`` rows."""
    ncols = len(a[0]) if a else 0
    if ncols == 0:
        return [tuple(int(i == j) for j in range(nrows)) for i in range(nrows)]
    return nullspace(transpose(a), p, nrows)


def solve_left(a, b, p):
    """Some y with ``y @ a = b``, or None."""
    n, m = len(a), len(b)
    e = Echelon(p, m + n)
    for i, r in enumerate(a):
        e.add(list(r) + [int(i == j) for j in range(n)])
    v = [x % p for x in b] + [0] * n
    for c in sorted(e.pivots):
        if c < m and v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, e.pivots[c])]
    if any(v[:m]):
        return None
    return tuple(-x % p for x in v[m:])


def complement_basis(basis, dim, p):
    """Unit vectors completing an echelon ``basis`` to a basis of F_p^dim."""
    piv = set(pivot_columns(basis))
    return tuple(tuple(int(j == c) for j in range(dim)) for c in range(dim) if c not in piv)


def _change_of_basis(sub, dim, p):
    comp = complement_basis(sub, dim, p)
    full = tuple(sub) + comp
    return full, invert(full, p)


def invert(a, p):
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix over F_p")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def split_action(sub, gens, p, dim):
    """Actions on an invariant subspace and on the quotient.

    ``sub`` is an echelon basis of an invariant subspace.  Returns
    ``(sub_gens, quot_gens, full, full_inv)`` where ``full`` is the basis
    ``sub`` followed by unit vectors.
    """
    full, full_inv = _change_of_basis(sub, dim, p)
    d = len(sub)
    sub_gens, quot_gens = [], []
    for g in gens:
        h = mat_mul(mat_mul(full, g, p), full_inv, p)
        sub_gens.append(tuple(tuple(r[:d]) for r in h[:d]))
        quot_gens.append(tuple(tuple(r[d:]) for r in h[d:]))
    return sub_gens, quot_gens, full, full_inv


def charpoly(a, p):
    """Characteristic polynomial det(xI - a), low-degree coefficient first.

    Hessenberg reduction followed by the standard recurrence; O(n^3).
    """
    n = len(a)
    h = [list(r) for r in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for r in h:
                r[m], r[piv] = r[piv], r[m]
        inv = pow(h[m][m - 1], -1, p)
        for i in range(m + 1, n):
            f = h[i][m - 1] * inv % p
            if f:
                h[i] = [(x - f * y) % p for x, y in zip(h[i], h[m])]
                for r in h:
                    r[m] = (r[m] + f * r[i]) % p
    # polys[i] = charpoly of leading i x i block, low-first
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_{i} h[i-1][m-1] * prod(sub) * p_{i-1}
        prev = polys[m - 1]
        cur = [0] * (m + 1)
        for i, c in enumerate(prev):
            cur[i + 1] += c
            cur[i] -= h[m - 1][m - 1] * c
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * h[i][i - 1] % p
            coef = h[i - 1][m - 1] * t % p
            if coef:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] -= coef * c
        polys.append([c % p for c in cur])
    return tuple(polys[n])


def poly_eval_matrix(coeffs, a, p):
    """Evaluate a polynomial (low-first coefficients) at a square matrix."""
    n = len(a)
    result = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in reversed(coeffs):
        result = mat_mul(result, a, p)
        if c:
            result = tuple(
                tuple((x + c * (i == j)) % p for j, x in enumerate(r)) for i, r in enumerate(result)
            )
    return result


def eliminate(A, b, p):
    """Forward elimination of ``A x = b`` over F_p with row-combination tracking.

    Returns ``(pivot_rows, certificate)``.  ``pivot_rows`` are echelon rows
    of the augmented matrix; ``certificate`` is ``{row: coeff}`` with
    ``y A = 0`` and ``y b != 0`` when the system is inconsistent, else None.
    """
    m, n = A.shape
    M = np.concatenate([A, b.reshape(m, 1)], axis=1) % p
    alive = np.ones(m, dtype=bool)
    factors = []  # (pivot_row, scale, {row: factor}) per pivot step
    pivots = []
    for c in range(n + 1):
        cand = np.nonzero(alive & (M[:, c] != 0))[0]
        if cand.size == 0:
            continue
        r0 = int(cand[0])
        if c == n:
            # a row reading 0 = nonzero
            return pivots, _combination(r0, factors, p)
        inv = pow(int(M[r0, c]), -1, p)
        M[r0] = (M[r0] * inv) % p
        alive[r0] = False
        others = cand[1:]
        f = M[others, c].copy()
        if others.size:
            M[others] = (M[others] - np.outer(f, M[r0])) % p
        factors.append((r0, inv, dict(zip(others.tolist(), f.tolist()))))
        pivots.append(tuple(int(x) for x in M[r0]))
    return pivots, None


def _combination(row, factors, p):
    """Express the current state of ``row`` as a combination of original rows."""
    combos = {}
    for r0, scale, hit in factors:
        base = {r0: 1}
        # r0 was itself reduced by earlier pivots
        for pr, _, earlier in factors:
            if pr == r0:
                break
            if r0 in earlier:
                for i, v in combos[pr].items():
                    base[i] = (base.get(i, 0) - earlier[r0] * v) % p
        combos[r0] = {i: v * scale % p for i, v in base.items() if v * scale % p}
    out = {row: 1}
    for r0, _, hit in factors:
        if row in hit:
            for i, v in combos[r0].items():
                out[i] = (out.get(i, 0) - hit[row] * v) % p
    return {i: v for i, v in sorted(out.items()) if v}


def solve_certified(A, b, p):
    """Solve ``A x = b`` over F_p (numpy arrays).

    Returns ``(particular, kernel_basis, certificate)``; exactly one of
    ``particular`` and ``certificate`` is None.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = A.shape[1]
    pivots, cert = eliminate(A, b, p)
    if cert is not None:
        return None, [], cert
    e = Echelon(p, n + 1)
    for row in pivots:
        e.add(row)
    x = [0] * n
    for c, row in e.pivots.items():
        x[c] = row[n]
    return tuple(x), nullspace([row[:n] for row in pivots], p, n), None


def check_certificate(A, b, cert, p):
    """``y A = 0`` and ``y b != 0`` for the sparse row combination ``cert``."""
    acc = np.zeros(A.shape[1], dtype=np.int64)
    rhs = 0
    for i, v in cert.items():
        acc = (acc + v * A[i]) % p
        rhs = (rhs + v * int(b[i])) % p
    return not acc.any() and rhs != 0
