"""Polynomials over Z/p^k: characteristic polynomials, Hensel lifting, roots.

Polynomials are tuples of coefficients, lowest degree first.
"""

from dataclasses import dataclass

from .errors import CapExceeded

MAX_DEGREE = 8


def trim(f):
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_mul(f, g, q):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(x % q for x in out)


def poly_add(f, g, q):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim((a + b) % q for a, b in zip(f, g))


def poly_sub(f, g, q):
    return poly_add(f, tuple(-b for b in g), q)


def poly_divmod(f, g, q):
    """Division by a monic ``g`` over Z/q."""
    if g[-1] % q != 1:
        raise ValueError("divisor must be monic")
    f = [x % q for x in f]
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return (0,), trim(f)
    quot = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            quot[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = (f[i - dg + j] - c * b) % q
    return trim(quot), trim(f[:dg] or [0])


def poly_eval(f, x, q):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def charpoly(A):
    """det(xI - A) over Z/p^k by the division-free Berkowitz recurrence."""
    q = A.ring.modulus
    n = A.nrows
    if n != A.ncols:
        raise ValueError("charpoly needs a square matrix")
    if n == 0:
        return (1,)
    M = A.rows
    # high-degree-first vectors during the recurrence
    poly = [1, -M[0][0] % q]
    for k in range(1, n):
        R = M[k][:k]
        C = [M[i][k] for i in range(k)]
        t = [1, -M[k][k] % q]
        vec = C
        for _ in range(k):
            t.append(-sum(r * v for r, v in zip(R, vec)) % q)
            vec = [sum(M[i][j] * vec[j] for j in range(k)) % q for i in range(k)]
        new = []
        for i in range(k + 2):
            new.append(sum(t[i - j] * poly[j] for j in range(k + 1) if 0 <= i - j < len(t)) % q)
        poly = new
    return tuple(reversed(poly))


def _mod_p_factors(f, p):
    """Irreducible factorisation of a monic polynomial over F_p.

    Returns ``[(factor, multiplicity)]`` with monic low-first factors.
    """
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor

    high = [c % p for c in reversed(f)]
    _, facs = gf_factor(high, p, ZZ)
    out = [(tuple(int(c) for c in reversed(fac)), int(e)) for fac, e in facs]
    out.sort()
    return out


def _xgcd_monic(g, h, p):
    """s, t over F_p with s*g + t*h = 1 (g, h coprime)."""
    # extended Euclid over F_p
    def divmod_p(a, b):
        inv = pow(b[-1], -1, p)
        a = [x % p for x in a]
        if len(a) < len(b):
            return (0,), trim(a)
        quot = [0] * (len(a) - len(b) + 1)
        for i in range(len(a) - 1, len(b) - 2, -1):
            c = a[i] * inv % p
            if c:
                quot[i - len(b) + 1] = c
                for j, bb in enumerate(b):
                    a[i - len(b) + 1 + j] = (a[i - len(b) + 1 + j] - c * bb) % p
        return trim(quot), trim(a[: len(b) - 1] or [0])

    r0, r1 = trim(x % p for x in g), trim(x % p for x in h)
    s0, s1 = (1,), (0,)
    t0, t1 = (0,), (1,)
    while r1 != (0,):
        qq, rr = divmod_p(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, poly_sub(s0, poly_mul(qq, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(qq, t1, p), p)
    if len(r0) != 1:
        raise ValueError("factors are not coprime mod p")
    inv = pow(r0[0], -1, p)
    return tuple(x * inv % p for x in s0), tuple(x * inv % p for x in t0)


def hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step from modulus m to m^2.

    Input: f = g*h, s*g + t*h = 1 (mod m), h monic.  Output the same
    relations mod m^2.
    """
    M = m * m
    e = poly_sub(f, poly_mul(g, h, M), M)
    qq, r = poly_divmod(poly_mul(s, e, M), h, M)
    g2 = poly_add(poly_add(g, poly_mul(t, e, M), M), poly_mul(qq, g, M), M)
    h2 = poly_add(h, r, M)
    b = poly_sub(poly_add(poly_mul(s, g2, M), poly_mul(t, h2, M), M), (1,), M)
    c, d = poly_divmod(poly_mul(s, b, M), h2, M)
    s2 = poly_sub(s, d, M)
    t2 = poly_sub(poly_sub(t, poly_mul(t, b, M), M), poly_mul(c, g2, M), M)
    return g2, h2, s2, t2


def _lift_pair(f, g, h, ring):
    """Lift f = g*h from mod p to mod p^k with g, h monic."""
    p, q = ring.p, ring.modulus
    s, t = _xgcd_monic(g, h, p)
    m = p
    while m < q:
        g, h, s, t = hensel_step(f, g, h, s, t, m)
        m = min(m * m, q)
        # bring everything back to the working modulus
        g, h = tuple(x % q for x in g), tuple(x % q for x in h)
    # g absorbs the (unit) leading coefficient drift; renormalise to monic
    lc = g[-1] % q
    if lc != 1:
        inv = pow(lc, -1, q)
        g = tuple(x * inv % q for x in g)
    g = trim(x % q for x in g)
    h = trim(x % q for x in h)
    return g, h


@dataclass(frozen=True)
class Inapplicable:
    """Hensel lifting cannot split f: its mod-p factors are not coprime."""

    mod_p_factors: tuple
    reason: str


def hensel_factor(f, ring):
    """Factor a monic polynomial over Z/p^k by lifting a coprime mod-p split.

    Returns a list of monic factors whose product is ``f`` mod p^k, or an
    ``Inapplicable`` when some mod-p irreducible factor is repeated.
    """
    q = ring.modulus
    f = trim(x % q for x in f)
    if f[-1] != 1:
        raise ValueError("polynomial must be monic")
    if len(f) - 1 > MAX_DEGREE:
        raise ValueError(f"degree {len(f) - 1} exceeds the cap {MAX_DEGREE}")
    facs = _mod_p_factors(f, ring.p)
    if any(e > 1 for _, e in facs):
        return Inapplicable(tuple(facs), "repeated factor mod p")
    if len(f) == 1:
        return []
    pieces = [fac for fac, _ in facs]
    out = []
    rest = f
    for i, g0 in enumerate(pieces[:-1]):
        h0 = (1,)
        for other in pieces[i + 1:]:
            h0 = poly_mul(h0, other, ring.p)
        g, h = _lift_pair(rest, g0, h0, ring)
        out.append(g)
        rest = h
    out.append(rest)
    check = (1,)
    for g in out:
        check = poly_mul(check, g, q)
    if check != f:
        raise AssertionError("Hensel lift failed verification")
    return out


def roots(f, ring, cap=1 << 20):
    """All roots of ``f`` in Z/p^k by enumeration."""
    q = ring.modulus
    if q > cap:
        raise CapExceeded(f"root enumeration over Z/{q} exceeds cap {cap}")
    return [x for x in range(q) if poly_eval(f, x, q) == 0]


def format_poly(f, var="x"):
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono:
            terms.append(f"{c}*{mono}")
        else:
            terms.append(str(c))
    return " + ".join(terms) if terms else "0"
