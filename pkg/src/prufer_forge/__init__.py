"""Exact computations with finite truncations of divisible abelian p-groups.

Linear algebra over Z/p^k, finite matrix groups, lifting obstructions,
MeatAxe and p-adic summand searches, group-algebra radicals and affine
permutation actions.
"""

__version__ = "0.1.0"

from .errors import CapExceeded, NotUnit
from .zpk import RingSpec, ZpkMatrix

__all__ = ["CapExceeded", "NotUnit", "RingSpec", "ZpkMatrix", "__version__"]
