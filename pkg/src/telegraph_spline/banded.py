"""Banded LU factorisation with partial pivoting.

Storage is row-oriented: ``band[i, j - i + lower]`` holds ``A[i, j]``.
Pivoting is confined to the ``lower`` rows below the diagonal, so the
upper factor grows to ``lower + upper`` off-diagonals at most.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

import numpy as np
from numba import njit

from .exceptions import BandwidthError, DimensionError, SingularMatrixError

__all__ = ["BandedSystem", "build", "factor", "solve", "PIVOT_RTOL"]

PIVOT_RTOL = 1e-14


@njit(cache=True, nogil=True)
def _bandec(work, lower, upper, al, perm, threshold):
    """In-place factorisation of the compact array ``work``.

    Returns -1 on success or the index of the first failed pivot.
    """
    n = work.shape[0]
    width = lower + upper + 1
    # shift the first rows left so that column 0 of storage is the
    # leftmost column present in that row
    shift = lower
    for i in range(min(lower, n)):
        for j in range(shift, width):
            work[i, j - shift] = work[i, j]
        for j in range(width - shift, width):
            work[i, j] = 0.0
        shift -= 1

    for k in range(n):
        last = min(k + lower, n - 1)
        pivot_row = k
        best = abs(work[k, 0])
        for r in range(k + 1, last + 1):
            if abs(work[r, 0]) > best:
                best = abs(work[r, 0])
                pivot_row = r
        perm[k] = pivot_row
        if best <= threshold:
            return k
        if pivot_row != k:
            for j in range(width):
                tmp = work[k, j]
                work[k, j] = work[pivot_row, j]
                work[pivot_row, j] = tmp
        for r in range(k + 1, last + 1):
            factor = work[r, 0] / work[k, 0]
            al[k, r - k - 1] = factor
            for j in range(1, width):
                work[r, j - 1] = work[r, j] - factor * work[k, j]
            work[r, width - 1] = 0.0
    return -1


@njit(cache=True, nogil=True)
def _banbks(work, lower, upper, al, perm, x):
    n = work.shape[0]
    width = lower + upper + 1
    for k in range(n):
        p = perm[k]
        if p != k:
            tmp = x[k]
            x[k] = x[p]
            x[p] = tmp
        last = min(k + lower, n - 1)
        for r in range(k + 1, last + 1):
            x[r] -= al[k, r - k - 1] * x[k]
    for i in range(n - 1, -1, -1):
        acc = x[i]
        for j in range(1, min(width, n - i)):
            acc -= work[i, j] * x[i + j]
        x[i] = acc / work[i, 0]


class BandedSystem:
    """A square banded matrix that is factored once and solved many times.

    Attributes
    ----------
    n : int
        Matrix dimension.
    lower, upper : int
        Number of sub- and super-diagonals.
    band : ndarray, shape (n, lower + upper + 1)
        Entries of the unfactored matrix.
    factored : bool
    """

    def __init__(self, band: np.ndarray, lower: int, upper: int):
        band = np.array(band, dtype=float)
        if band.ndim != 2 or band.shape[1] != lower + upper + 1:
            raise DimensionError(
                f"band storage must have shape (n, {lower + upper + 1}), got {band.shape}"
            )
        self.n = band.shape[0]
        self.lower = lower
        self.upper = upper
        self.band = band
        self.factored = False
        self._work = None
        self._al = None
        self._perm = None

    @classmethod
    def from_dense(cls, matrix, lower: int, upper: int) -> BandedSystem:
        matrix = np.asarray(matrix, dtype=float)
        n = matrix.shape[0]
        if matrix.shape != (n, n):
            raise DimensionError(f"matrix must be square, got {matrix.shape}")
        rows = [{j: matrix[i, j] for j in np.flatnonzero(matrix[i])} for i in range(n)]
        return build(n, rows, lower, upper)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n))
        for i in range(self.n):
            for d in range(-self.lower, self.upper + 1):
                j = i + d
                if 0 <= j < self.n:
                    dense[i, j] = self.band[i, d + self.lower]
        return dense

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionError(f"expected vector of length {self.n}, got shape {x.shape}")
        out = np.zeros(self.n)
        for d in range(-self.lower, self.upper + 1):
            col = self.band[:, d + self.lower]
            lo, hi = max(0, -d), min(self.n, self.n - d)
            out[lo:hi] += col[lo:hi] * x[lo + d : hi + d]
        return out

    def norm_inf(self) -> float:
        return float(np.max(np.sum(np.abs(self.band), axis=1)))

    def factor(self) -> BandedSystem:
        """LU-factor in place and return ``self``."""
        if self.factored:
            raise RuntimeError("system is already factored")
        work = self.band.copy()
        al = np.zeros((self.n, max(self.lower, 1)))
        perm = np.zeros(self.n, dtype=np.int64)
        threshold = PIVOT_RTOL * self.norm_inf()
        failed = _bandec(work, self.lower, self.upper, al, perm, threshold)
        if failed >= 0:
            raise SingularMatrixError(
                f"pivot {failed} below {PIVOT_RTOL:g} * ||A||_inf; matrix is singular"
            )
        self._work, self._al, self._perm = work, al, perm
        self.factored = True
        return self

    def solve(self, rhs) -> np.ndarray:
        if not self.factored:
            raise RuntimeError("factor() must be called before solve()")
        rhs = np.asarray(rhs, dtype=float)
        if rhs.shape != (self.n,):
            raise DimensionError(f"right-hand side must have length {self.n}, got shape {rhs.shape}")
        x = rhs.copy()
        _banbks(self._work, self.lower, self.upper, self._al, self._perm, x)
        return x


def build(
    n: int,
    rows: Sequence[Mapping[int, float]] | Iterable[Mapping[int, float]],
    lower: int = 2,
    upper: int = 2,
) -> BandedSystem:
    """Create a banded system from per-row ``{column: value}`` mappings.

    Raises
    ------
    BandwidthError
        If any nonzero lies outside the band; every offending cell is listed.
    """
    rows = list(rows)
    if len(rows) != n:
        raise DimensionError(f"expected {n} rows, got {len(rows)}")
    band = np.zeros((n, lower + upper + 1))
    offending = []
    for i, row in enumerate(rows):
        for j, value in row.items():
            j = int(j)
            if value == 0.0:
                continue
            if not (0 <= j < n) or not (-lower <= j - i <= upper):
                offending.append((i, j))
                continue
            band[i, j - i + lower] = value
    if offending:
        raise BandwidthError(offending)
    return BandedSystem(band, lower, upper)


def factor(system: BandedSystem) -> BandedSystem:
    return system.factor()


def solve(system: BandedSystem, rhs) -> np.ndarray:
    return system.solve(rhs)
