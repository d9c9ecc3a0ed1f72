"""The rank-r divisible abelian p-group M = r copies of C_{p^oo} and its truncations.

Elements are stored as exact fractions a/p^m taken mod 1.  The truncation
M[p^k] = {x : p^k x = 0} is identified with (Z/p^k)^r once and for all by

    a/p^m  <->  a * p^(k-m)

and every other module uses this convention (see ``TorsionSubgroup``).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Integral

from .errors import CapExceeded, default_cap
from .groups import close_integral
from .zpk import RingSpec, ZpkMatrix, is_invertible, is_prime

DEFAULT_ENUMERATION_CAP = 1 << 20


def _canon(x, p):
    x = Fraction(x) % 1
    d = x.denominator
    while d % p == 0:
        d //= p
    if d != 1:
        raise ValueError(f"{x} does not have a {p}-power denominator")
    return x


def _den_exp(x, p):
    d, m = x.denominator, 0
    while d > 1:
        d //= p
        m += 1
    return m


@dataclass(frozen=True)
class PrueferVector:
    """An element of (Q_p/Z_p)^r."""

    p: int
    coords: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "coords", tuple(_canon(c, self.p) for c in self.coords))

    @classmethod
    def zero(cls, p, r):
        return cls(p, (0,) * r)

    @classmethod
    def from_pairs(cls, p, pairs):
        return cls(p, tuple(Fraction(num, p**e) for num, e in pairs))

    @property
    def rank(self):
        return len(self.coords)

    def pairs(self):
        """``(numerator, exponent)`` per coordinate, in lowest terms."""
        return tuple((c.numerator, _den_exp(c, self.p)) for c in self.coords)

    def _check(self, other):
        if self.p != other.p or self.rank != other.rank:
            raise ValueError("rank or prime mismatch")

    def __add__(self, other):
        self._check(other)
        return PrueferVector(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return PrueferVector(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        if not isinstance(n, Integral):
            return NotImplemented
        return PrueferVector(self.p, tuple(n * a for a in self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def order(self):
        """Least p^m with p^m x = 0."""
        return max((c.denominator for c in self.coords), default=1)

    def times_matrix(self, g):
        """Row-vector action x -> x g for an integer matrix g."""
        r = self.rank
        return PrueferVector(
            self.p, tuple(sum(self.coords[i] * g[i][j] for i in range(r)) for j in range(r))
        )

    def to_json(self):
        return {
            "p": self.p,
            "coords": [{"num": n, "den_exp": e} for n, e in self.pairs()],
        }

    @classmethod
    def from_json(cls, data):
        return cls.from_pairs(int(data["p"]), [(int(c["num"]), int(c["den_exp"])) for c in data["coords"]])

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class TorsionSubgroup:
    """M[p^k] inside the rank-r divisible p-group; p^(kr) elements."""

    def __init__(self, r, ring, cap=None):
        cap = default_cap(DEFAULT_ENUMERATION_CAP) if cap is None else cap
        self.r = r
        self.ring = ring
        self.size = ring.modulus**r
        if self.size > cap:
            raise CapExceeded(f"|M[{ring.p}^{ring.k}]| = {self.size} exceeds the cap {cap}")

    def __len__(self):
        return self.size

    def __iter__(self):
        for v in product(range(self.ring.modulus), repeat=self.r):
            yield self.from_vector(v)

    def __contains__(self, x):
        return x.p == self.ring.p and x.rank == self.r and x.order() <= self.ring.modulus

    def to_vector(self, x):
        """The fixed bijection M[p^k] -> (Z/p^k)^r."""
        if x not in self:
            raise ValueError(f"{x} is not in M[{self.ring.p}^{self.ring.k}]")
        q = self.ring.modulus
        return tuple(int(c * q) % q for c in x.coords)

    def from_vector(self, v):
        q = self.ring.modulus
        return PrueferVector(self.ring.p, tuple(Fraction(int(a) % q, q) for a in v))


def torsion(r, ring, cap=None):
    return TorsionSubgroup(r, ring, cap)


def mult_by_p_check(r, ring, cap=None):
    """Check p M[p^k] = M[p^(k-1)] and ker(x -> px) on M[p^k] = M[p]."""
    p, k = ring.p, ring.k
    tk = torsion(r, ring, cap)
    elems = list(tk)
    image = {p * x for x in elems}
    kernel = {x for x in elems if (p * x).is_zero()}
    lower = set(torsion(r, RingSpec(p, k - 1), cap)) if k > 1 else {PrueferVector.zero(p, r)}
    mp = set(torsion(r, RingSpec(p, 1), cap))
    return {
        "r": r,
        "p": p,
        "k": k,
        "image_size": len(image),
        "image_equals_lower_truncation": image == lower,
        "kernel_size": len(kernel),
        "kernel_equals_M_p": kernel == mp,
        "kernel_size_is_p_to_r": len(kernel) == p**r,
        "passed": image == lower and kernel == mp and len(kernel) == p**r,
    }


class DivisibleHull:
    """A finite group acting on M through integer matrices (an integral cover).

    Tensoring the cover with Z[1/p] and dividing out the lattice gives the
    action on M: each generator acts on fractional coordinates mod 1.
    """

    def __init__(self, p, r, generators):
        self.p = p
        self.r = r
        self.generators = tuple(generators)

    def act(self, x, i):
        return x.times_matrix(self.generators[i])

    def truncation_matrices(self, k):
        """Generator actions on M[p^k] transported to (Z/p^k)^r."""
        ring = RingSpec(self.p, k)
        return [ZpkMatrix(ring, g) for g in self.generators]

    def check_truncation(self, k, cap=None):
        """Every generator's action on M[p^k] equals the matrix action mod p^k."""
        ring = RingSpec(self.p, k)
        t = torsion(self.r, ring, cap)
        mats = self.truncation_matrices(k)
        for x in t:
            v = t.to_vector(x)
            for i, m in enumerate(mats):
                if t.to_vector(self.act(x, i)) != m.apply(v):
                    return False
        return True


def divisible_hull_from_cover(gen_mats, r, p, cap=None):
    """Build the action on M from integer generator matrices.

    Rejects non-integer entries and matrices singular mod p, and checks that
    the generated integral group is finite (closure within ``cap``).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    gens = []
    for g in gen_mats:
        if len(g) != r or any(len(row) != r for row in g):
            raise ValueError(f"generator is not {r}x{r}")
        rows = []
        for row in g:
            out = []
            for a in row:
                if isinstance(a, bool) or not isinstance(a, (Integral, Fraction)):
                    raise TypeError(f"non-integer entry {a!r}")
                if isinstance(a, Fraction) and a.denominator != 1:
                    raise TypeError(f"non-integer entry {a}")
                out.append(int(a))
            rows.append(tuple(out))
        gens.append(tuple(rows))
    ring = RingSpec(p, 1)
    for g in gens:
        if not is_invertible(ZpkMatrix(ring, g)):
            raise ValueError("generator is singular mod p")
    close_integral(gens, cap)
    return DivisibleHull(p, r, gens)
