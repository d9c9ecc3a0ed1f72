"""Exception types shared across the package."""

import os


class CapExceeded(RuntimeError):
    """An enumeration, closure or search budget was exhausted.

    ``partial`` optionally carries whatever was computed before the cap hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotUnit(ArithmeticError):
    """A matrix is singular modulo p, so it has no inverse over Z/p^k."""


CAP_ENV_VAR = "PRUFER_FORGE_CAP"


def default_cap(fallback):
    """Return the cap from ``PRUFER_FORGE_CAP`` if set, else ``fallback``."""
    value = os.environ.get(CAP_ENV_VAR)
    if value is None or value.strip() == "":
        return fallback
    return int(value)
