"""Multi-indices of fixed order and the monomial vector built from them.

The canonical ordering used across the whole package (and by every CSV
column that depends on it) is graded reverse-lexicographic, descending:
for d = 2, n = 2 the order is (2,0), (1,1), (0,2). See README for the
full convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Binomials are evaluated in exact integer arithmetic; above this range we
# refuse instead of risking silent overflow in downstream float conversions.
MAX_SUPPORTED = 16


@dataclass(frozen=True)
class MultiIndex:
    """A tuple of non-negative exponents, one per complex variable."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) == 0:
            raise ValueError("a multi-index needs at least one entry")
        if any(int(a) != a or a < 0 for a in self.entries):
            raise ValueError(f"entries must be non-negative integers, got {self.entries}")
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))

    @property
    def order(self) -> int:
        return sum(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _check_range(d: int, n: int) -> None:
    if d < 1 or n < 1:
        raise ValueError(f"require d >= 1 and n >= 1, got d={d}, n={n}")
    if d > MAX_SUPPORTED or n > MAX_SUPPORTED:
        raise ValueError(
            f"(d={d}, n={n}) outside the supported range 1..{MAX_SUPPORTED}"
        )


def d_tilde(d: int, n: int) -> int:
    """Number of multi-indices of order n in d variables."""
    _check_range(d, n)
    return math.comb(n + d - 1, d - 1)


def _compositions(d: int, n: int):
    # Recursing on the last coordinate, ascending, yields graded
    # reverse-lexicographic order descending.
    if d == 1:
        yield (n,)
        return
    for k in range(n + 1):
        for head in _compositions(d - 1, n - k):
            yield head + (k,)


def enumerate_indices(d: int, n: int) -> list[MultiIndex]:
    """All multi-indices of order n in d variables, canonical order."""
    _check_range(d, n)
    return [MultiIndex(a) for a in _compositions(d, n)]


@lru_cache(maxsize=None)
def alpha_matrix(d: int, n: int) -> np.ndarray:
    """Exponent rows in canonical order, shape (d_tilde, d), read-only."""
    mat = np.array([a.entries for a in enumerate_indices(d, n)], dtype=np.int64)
    mat.setflags(write=False)
    return mat


def monomial_vector(zeta, n: int) -> np.ndarray:
    """All monomials zeta^alpha of order n, in canonical order."""
    from . import kernels

    z = np.atleast_1d(np.asarray(zeta, dtype=np.complex128))
    if z.ndim != 1:
        raise ValueError("zeta must be a one-dimensional complex vector")
    return kernels.monomials(z[None, :], alpha_matrix(z.size, n))[0]
