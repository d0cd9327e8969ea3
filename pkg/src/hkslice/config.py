"""Global numerical tolerances.

All checks in the package are residual based. The defaults below are
sized for desk-scale problems (matrix dimension at most 12) in complex
double precision.
"""

from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class Tolerances:
    tol: float = 1e-9
    separation: float = 1e-6
    cluster: float = 1e-6


TOLERANCES = Tolerances()


def get_tol(tol=None):
    return TOLERANCES.tol if tol is None else float(tol)


def get_separation(sep=None):
    return TOLERANCES.separation if sep is None else float(sep)


@contextmanager
def tolerances(**overrides):
    """Temporarily override entries of the global :class:`Tolerances`."""
    saved = {k: getattr(TOLERANCES, k) for k in overrides}
    for k, v in overrides.items():
        if k not in saved or not hasattr(TOLERANCES, k):
            raise AttributeError(k)
        setattr(TOLERANCES, k, float(v))
    try:
        yield TOLERANCES
    finally:
        for k, v in saved.items():
            setattr(TOLERANCES, k, v)
