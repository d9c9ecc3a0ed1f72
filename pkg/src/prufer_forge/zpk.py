"""Exact linear algebra over the local rings Z/p^k.

Matrices hold Python integers reduced into ``[0, p^k)``.  Row spans are
compared through the Howell form, which is canonical over Z/p^k where the
usual echelon form is not (row spans need not be free).
"""

from dataclasses import dataclass, field

from .errors import NotUnit


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ring Z/p^k."""

    p: int
    k: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p={self.p!r} is not prime")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"precision k={self.k!r} must be >= 1")
        object.__setattr__(self, "modulus", self.p**self.k)

    def with_k(self, k):
        return RingSpec(self.p, k)

    def balanced(self, x):
        """Representative of ``x`` in ``(-q/2, q/2]``."""
        q = self.modulus
        x %= q
        return x - q if 2 * x > q else x

    def to_json(self):
        return {"p": self.p, "k": self.k}


def valuation(x, ring):
    """p-adic valuation of a residue, capped at ``ring.k`` (so v(0) = k)."""
    x %= ring.modulus
    if x == 0:
        return ring.k
    v = 0
    while x % ring.p == 0:
        x //= ring.p
        v += 1
    return v


def _mul_rows(a, b, q):
    """Product of two row-tuples matrices, entries mod q."""
    if not b:
        return tuple(() for _ in a)
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in cols) for row in a)


class ZpkMatrix:
    """Immutable matrix over Z/p^k.

    Entries are normalised into ``[0, p^k)`` on construction.  Degenerate
    shapes (0 x n, n x 0) are allowed; ``ncols`` is stored explicitly so that
    a matrix without rows still knows its width.
    """

    __slots__ = ("ring", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ring, rows, ncols=None):
        q = ring.modulus
        rows = tuple(tuple(int(x) % q for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, ring, rows, ncols):
        # rows already reduced
        m = object.__new__(cls)
        object.__setattr__(m, "ring", ring)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("ZpkMatrix is immutable")

    @classmethod
    def identity(cls, ring, n):
        return cls._raw(ring, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls._raw(ring, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_json(cls, data):
        ring = RingSpec(int(data["p"]), int(data["k"]))
        rows = data["rows"]
        ncols = data.get("cols")
        if ncols is None and not rows:
            ncols = 0
        return cls(ring, rows, ncols)

    def to_json(self):
        return {"p": self.ring.p, "k": self.ring.k, "rows": [list(r) for r in self.rows]}

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, ZpkMatrix):
            return NotImplemented
        return self.ring == other.ring and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring.p, self.ring.k, self.ncols, self.rows)))
        return self._hash

    def __repr__(self):
        return f"ZpkMatrix(Z/{self.ring.p}^{self.ring.k}, {[list(r) for r in self.rows]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __matmul__(self, other):
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return ZpkMatrix._raw(self.ring, _mul_rows(self.rows, other.rows, self.ring.modulus), other.ncols)

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        q = self.ring.modulus
        rows = tuple(tuple((a + b) % q for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return ZpkMatrix._raw(self.ring, rows, self.ncols)

    def __neg__(self):
        q = self.ring.modulus
        return ZpkMatrix._raw(self.ring, tuple(tuple(-a % q for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        q = self.ring.modulus
        return ZpkMatrix._raw(self.ring, tuple(tuple(a * c % q for a in r) for r in self.rows), self.ncols)

    def transpose(self):
        if self.ncols == 0:
            return ZpkMatrix._raw(self.ring, (), self.nrows)
        if self.nrows == 0:
            return ZpkMatrix._raw(self.ring, tuple(() for _ in range(self.ncols)), 0)
        return ZpkMatrix._raw(self.ring, tuple(zip(*self.rows)), self.nrows)

    @property
    def T(self):
        return self.transpose()

    def apply(self, vec):
        """Row vector times matrix: ``vec @ self``."""
        if len(vec) != self.nrows:
            raise ValueError("dimension mismatch")
        q = self.ring.modulus
        return tuple(sum(v * self.rows[i][j] for i, v in enumerate(vec)) % q for j in range(self.ncols))

    def mul_vec(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        q = self.ring.modulus
        return tuple(sum(a * v for a, v in zip(row, vec)) % q for row in self.rows)

    def reduce(self, j):
        """Entrywise reduction to Z/p^j (j <= k)."""
        if not 1 <= j <= self.ring.k:
            raise ValueError(f"cannot reduce precision {self.ring.k} to {j}")
        ring = self.ring.with_k(j)
        q = ring.modulus
        return ZpkMatrix._raw(ring, tuple(tuple(a % q for a in r) for r in self.rows), self.ncols)

    def lift(self, k, balanced=True):
        """Canonical entrywise lift to Z/p^k (k >= current precision).

        With ``balanced`` the representative in ``(-q/2, q/2]`` is used, so a
        matrix with small integer entries lifts to itself.
        """
        if k < self.ring.k:
            raise ValueError("lift target below current precision")
        conv = self.ring.balanced if balanced else (lambda x: x)
        return ZpkMatrix(self.ring.with_k(k), [[conv(a) for a in r] for r in self.rows], self.ncols)

    def balanced_rows(self):
        return [[self.ring.balanced(a) for a in r] for r in self.rows]

    def is_identity(self):
        return self.is_square and all(
            a == (i == j) for i, r in enumerate(self.rows) for j, a in enumerate(r)
        )

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def block(self, row_idx, col_idx):
        return ZpkMatrix._raw(
            self.ring, tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx), len(col_idx)
        )

    def power(self, n):
        result = ZpkMatrix.identity(self.ring, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result


def matrix_valuation(A):
    """Minimum valuation over all entries (k for the zero matrix)."""
    ring = A.ring
    return min((valuation(a, ring) for r in A.rows for a in r), default=ring.k)


def block_diag(*mats):
    ring = mats[0].ring
    n = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append((0,) * off + r + (0,) * (ncols - off - m.ncols))
        off += m.ncols
    assert len(rows) == n
    return ZpkMatrix._raw(ring, tuple(rows), ncols)


# ---------------------------------------------------------------------------
# Howell form


def _howell_rows(rows, ncols, ring):
    """Howell basis of the row span of ``rows``.

    Returns a list of ``(pivot_col, pivot_valuation, row)`` sorted by pivot
    column.  Rows are lists of residues mod p^k.
    """
    p, k, q = ring.p, ring.k, ring.modulus
    pending = [[x % q for x in r] for r in rows]
    pending = [r for r in pending if any(r)]
    out = []
    for c in range(ncols):
        best, bestv = None, k
        for i, row in enumerate(pending):
            if row[c]:
                v = valuation(row[c], ring)
                if best is None or v < bestv:
                    best, bestv = i, v
                    if v == 0:
                        break
        if best is None:
            continue
        piv = pending.pop(best)
        pv = p**bestv
        inv = pow(piv[c] // pv, -1, q)
        piv = [x * inv % q for x in piv]
        nxt = []
        for row in pending:
            if row[c]:
                f = row[c] // pv
                row = [(a - f * b) % q for a, b in zip(row, piv)]
            if any(row):
                nxt.append(row)
        if bestv > 0:
            # p^(k-v) * pivot row kills the pivot; keep it so the span below
            # stays saturated (the Howell property).
            extra = [x * p ** (k - bestv) % q for x in piv]
            if any(extra):
                nxt.append(extra)
        pending = nxt
        out.append([c, bestv, piv])
    for i, (c, v, piv) in enumerate(out):
        m = p**v
        for j in range(i):
            row = out[j][2]
            f = row[c] // m
            if f:
                out[j][2] = [(a - f * b) % q for a, b in zip(row, piv)]
    return [(c, v, tuple(r)) for c, v, r in out]


def howell_basis(A):
    """Nonzero rows of the Howell form of ``A`` as a ZpkMatrix."""
    rows = [r for _, _, r in _howell_rows(A.rows, A.ncols, A.ring)]
    return ZpkMatrix._raw(A.ring, tuple(rows), A.ncols)


def _echelon_invertible(M):
    """Reduce ``M`` by invertible row operations to (generators; zero rows).

    Returns ``(V, mu)`` with ``V`` invertible and the first ``mu`` rows of
    ``V @ M`` a minimal generating set of the row span, the rest zero.
    """
    ring = M.ring
    q = ring.modulus
    n, m = M.nrows, M.ncols
    aug = [list(M.rows[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for c in range(m):
        best, bestv = None, ring.k
        for i in range(r, n):
            if aug[i][c]:
                v = valuation(aug[i][c], ring)
                if best is None or v < bestv:
                    best, bestv = i, v
        if best is None:
            continue
        aug[r], aug[best] = aug[best], aug[r]
        pv = ring.p**bestv
        inv = pow(aug[r][c] // pv, -1, q)
        aug[r] = [x * inv % q for x in aug[r]]
        for i in range(r + 1, n):
            if aug[i][c]:
                f = aug[i][c] // pv
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[r])]
        r += 1
    # Drop redundant generators: over a local ring an irredundant generating
    # set is minimal (Nakayama).
    changed = True
    while changed:
        changed = False
        live = [i for i in range(n) if any(aug[i][:m])]
        for i in live:
            others = [j for j in live if j != i]
            if not others:
                continue
            B = ZpkMatrix._raw(ring, tuple(tuple(aug[j][:m]) for j in others), m)
            sol = solve(B.T, aug[i][:m])
            if sol.particular is not None:
                for j, c in zip(others, sol.particular):
                    if c:
                        aug[i] = [(a - c * b) % q for a, b in zip(aug[i], aug[j])]
                changed = True
                break
    order = [i for i in range(n) if any(aug[i][:m])] + [i for i in range(n) if not any(aug[i][:m])]
    aug = [aug[i] for i in order]
    mu = sum(1 for row in aug if any(row[:m]))
    V = ZpkMatrix._raw(ring, tuple(tuple(row[m:]) for row in aug), n)
    return V, mu


def howell_form(A):
    """Howell form ``H`` of ``A`` with an invertible transform ``U``.

    ``A`` is padded with zero rows to ``max(nrows, ncols)`` rows (a Howell
    basis can need up to ``ncols`` rows); then ``U @ A_padded == H``.  When
    ``A`` already has at least as many rows as columns no padding happens and
    ``U @ A == H``.  Nonzero rows of ``H`` come first, sorted by pivot column,
    pivots are powers of p and entries above each pivot are reduced.
    """
    ring = A.ring
    n = max(A.nrows, A.ncols)
    Apad = ZpkMatrix._raw(ring, A.rows + tuple((0,) * A.ncols for _ in range(n - A.nrows)), A.ncols)
    hrows = [r for _, _, r in _howell_rows(A.rows, A.ncols, ring)]
    H = ZpkMatrix._raw(ring, tuple(hrows) + tuple((0,) * A.ncols for _ in range(n - len(hrows))), A.ncols)
    if n == 0:
        return H, ZpkMatrix.identity(ring, 0)
    VA, mu = _echelon_invertible(Apad)
    VH, mu_h = _echelon_invertible(H)
    assert mu == mu_h
    gens_a = (VA @ Apad).rows[:mu]
    gens_h = (VH @ H).rows[:mu]
    P = [list(r) for r in ZpkMatrix.identity(ring, n).rows]
    if mu:
        Ga = ZpkMatrix._raw(ring, gens_a, A.ncols)
        for i, g in enumerate(gens_h):
            sol = solve(Ga.T, g)
            assert sol.particular is not None
            P[i] = list(sol.particular) + [0] * (n - mu)
    Pm = ZpkMatrix._raw(ring, tuple(tuple(r) for r in P), n)
    U = invert(VH) @ Pm @ VA
    return H, U


def smith_exponents(A):
    """Exponents e_i with diag(p^e_i) the Smith form of ``A``.

    Length ``min(nrows, ncols)``; zero diagonal entries report ``k``.
    """
    ring = A.ring
    q = ring.modulus
    M = [list(r) for r in A.rows]
    n, m = A.nrows, A.ncols
    out = []
    for t in range(min(n, m)):
        best, bestv = None, ring.k
        for i in range(t, n):
            for j in range(t, m):
                if M[i][j]:
                    v = valuation(M[i][j], ring)
                    if v < bestv:
                        best, bestv = (i, j), v
        if best is None:
            out.extend([ring.k] * (min(n, m) - t))
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        pv = ring.p**bestv
        inv = pow(M[t][t] // pv, -1, q)
        M[t] = [x * inv % q for x in M[t]]
        for i in range(t + 1, n):
            if M[i][t]:
                f = M[i][t] // pv
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[t])]
        for j in range(t + 1, m):
            if M[t][j]:
                f = M[t][j] // pv
                for row in M:
                    row[j] = (row[j] - f * row[t]) % q
        out.append(bestv)
    return out


# ---------------------------------------------------------------------------
# Linear systems


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``A x = b``: ``particular + span(kernel_basis)``."""

    particular: tuple | None
    kernel_basis: tuple

    @property
    def solvable(self):
        return self.particular is not None


def _coeff_howell(A):
    """Howell form of ``[A^T | I]``; splits into image rows and kernel rows."""
    ring = A.ring
    n, m = A.nrows, A.ncols
    B = A.transpose()
    aug = [list(B.rows[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    rows = _howell_rows(aug, n + m, ring)
    image = [(c, v, r[:n], r[n:]) for c, v, r in rows if c < n]
    kern = [r[n:] for c, v, r in rows if c >= n]
    return image, kern


def solve(A, b):
    """All x with ``A x = b`` over Z/p^k."""
    ring = A.ring
    q = ring.modulus
    if len(b) != A.nrows:
        raise ValueError(f"rhs length {len(b)} does not match {A.nrows} rows")
    image, kern = _coeff_howell(A)
    res = [int(x) % q for x in b]
    x = [0] * A.ncols
    ok = True
    start = 0
    for c, v, h, coeff in image:
        if any(res[start:c]):
            ok = False
            break
        pv = ring.p**v
        if res[c] % pv:
            ok = False
            break
        f = res[c] // pv
        if f:
            res = [(a - f * b_) % q for a, b_ in zip(res, h)]
            x = [(a + f * b_) % q for a, b_ in zip(x, coeff)]
        start = c + 1
    if ok and any(res):
        ok = False
    return SolutionSet(tuple(x) if ok else None, tuple(tuple(k) for k in kern))


def kernel(A):
    """Generators of ``{x : A x = 0}`` as a Z/p^k-module."""
    _, kern = _coeff_howell(A)
    return [tuple(k) for k in kern]


def left_kernel(A):
    """Generators of ``{y : y A = 0}``."""
    return kernel(A.transpose())


def invert(A):
    """Inverse over Z/p^k; raises ``NotUnit`` when A is singular mod p."""
    if not A.is_square:
        raise ValueError("only square matrices are invertible")
    ring = A.ring
    q, p = ring.modulus, ring.p
    n = A.nrows
    aug = [list(A.rows[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] % p), None)
        if piv is None:
            raise NotUnit("matrix is singular modulo p")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, q)
        aug[c] = [x * inv % q for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[c])]
    return ZpkMatrix._raw(ring, tuple(tuple(r[n:]) for r in aug), n)


def is_invertible(A):
    try:
        invert(A)
    except NotUnit:
        return False
    return True


def row_span(A):
    """Every vector in the row span (enumeration; desk scale only)."""
    q = A.ring.modulus
    span = {(0,) * A.ncols}
    for row in A.rows:
        span = {tuple((s + c * r) % q for s, r in zip(v, row)) for v in span for c in range(q)}
    return span
