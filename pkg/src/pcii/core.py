"""Pairwise-comparison matrices, triads and the consistency condition.

A PC matrix ``A`` holds positive ratios with ``A[i, i] == 1`` and
``A[j, i] == 1 / A[i, j]``. Every index combination ``i < j < k`` defines a
triad ``(x, y, z) = (A[i, j], A[i, k], A[j, k])``; the matrix is consistent
when ``y == x * z`` for every triad.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DiagonalViolation,
    NonFiniteInput,
    NonPositiveEntry,
    NotSquare,
    ReciprocityViolation,
    SkewSymmetryViolation,
    WrongCount,
)

RECIPROCITY_RTOL = 1e-12
SKEW_ATOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _as_square(entries) -> np.ndarray:
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise NotSquare(f"entries are not a numeric 2-D array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSquare(f"expected a square 2-D array, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class PCMatrix:
    """Validated multiplicative reciprocal matrix. Build with :func:`new_pc_matrix`."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PCMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()

    def upper_triangle(self) -> list[float]:
        """Entries above the diagonal in row-major order."""
        rows, cols = np.triu_indices(self.n, k=1)
        return self.entries[rows, cols].tolist()


@dataclass(frozen=True, eq=False)
class AdditivePCMatrix:
    """Skew-symmetric matrix of differences, the additive counterpart of PCMatrix."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditivePCMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None


@dataclass(frozen=True)
class Triad:
    """Three comparisons ``(A[i, j], A[i, k], A[j, k])`` closing a cycle."""

    x: float
    y: float
    z: float
    i: int = 0
    j: int = 1
    k: int = 2

    def __post_init__(self):
        if not self.i < self.j < self.k:
            raise ValueError(f"triad indices must satisfy i < j < k, got {self.indices}")
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not (math.isfinite(value) and value > 0):
                raise NonPositiveEntry(f"triad component {name}={value!r} must be positive and finite")

    @property
    def values(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)


def new_pc_matrix(entries) -> PCMatrix:
    """Validate ``entries`` and wrap them as an immutable :class:`PCMatrix`.

    Raises:
        NotSquare: not a square 2-D array, or smaller than 2x2.
        NonPositiveEntry: a zero, negative, NaN or infinite entry.
        DiagonalViolation: a diagonal entry other than exactly 1.
        ReciprocityViolation: ``A[i, j] * A[j, i]`` differs from 1 by more
            than ``1e-12 * max(1, |A[i, j] * A[j, i]|)``.
    """
    arr = _as_square(entries)
    n = arr.shape[0]
    if n < 2:
        raise NotSquare(f"a PC matrix needs n >= 2, got n={n}")

    bad = ~(np.isfinite(arr) & (arr > 0))
    if bad.any():
        r, c = map(int, np.argwhere(bad)[0])
        raise NonPositiveEntry(f"entry {float(arr[r, c])!r} is not a positive finite ratio", cell=(r, c))

    off_diag = np.flatnonzero(np.diag(arr) != 1.0)
    if off_diag.size:
        r = int(off_diag[0])
        raise DiagonalViolation(f"diagonal entry {float(arr[r, r])!r} must equal 1", cell=(r, r))

    prod = arr * arr.T
    bad = np.abs(prod - 1.0) > RECIPROCITY_RTOL * np.maximum(1.0, np.abs(prod))
    if bad.any():
        r, c = map(int, np.argwhere(np.triu(bad, k=1))[0])
        raise ReciprocityViolation(
            f"A[{r},{c}] * A[{c},{r}] = {float(prod[r, c])!r}, expected 1", cell=(r, c)
        )
    return PCMatrix(_frozen(arr))


def from_upper_triangle(n: int, values: Sequence[float]) -> PCMatrix:
    """Build a PC matrix from its row-major upper triangle.

    >>> from_upper_triangle(3, [2, 5, 3]).tolist()[0]
    [1.0, 2.0, 5.0]
    """
    values = [float(v) for v in values]
    expected = n * (n - 1) // 2
    if n < 2 or len(values) != expected:
        raise WrongCount(f"n={n} needs {expected} upper-triangle values, got {len(values)}")

    arr = np.ones((n, n))
    rows, cols = np.triu_indices(n, k=1)
    for r, c, v in zip(rows, cols, values):
        if not (math.isfinite(v) and v > 0):
            raise NonPositiveEntry(f"entry {v!r} is not a positive finite ratio", cell=(int(r), int(c)))
        arr[r, c] = v
        arr[c, r] = 1.0 / v
    return new_pc_matrix(arr)


def new_additive_matrix(entries) -> AdditivePCMatrix:
    """Validate a skew-symmetric difference matrix (absolute tolerance 1e-12)."""
    arr = _as_square(entries)
    if arr.shape[0] < 2:
        raise NotSquare(f"an additive PC matrix needs n >= 2, got n={arr.shape[0]}")
    bad = ~np.isfinite(arr)
    if bad.any():
        r, c = map(int, np.argwhere(bad)[0])
        raise NonFiniteInput(f"entry {float(arr[r, c])!r} is not finite", cell=(r, c))
    nonzero = np.flatnonzero(np.diag(arr) != 0.0)
    if nonzero.size:
        r = int(nonzero[0])
        raise DiagonalViolation(f"diagonal entry {float(arr[r, r])!r} must equal 0", cell=(r, r))
    bad = np.abs(arr + arr.T) > SKEW_ATOL
    if bad.any():
        r, c = map(int, np.argwhere(np.triu(bad, k=1))[0])
        raise SkewSymmetryViolation(f"A[{r},{c}] + A[{c},{r}] = {float(arr[r, c] + arr[c, r])!r}", cell=(r, c))
    return AdditivePCMatrix(_frozen(arr))


@lru_cache(maxsize=None)
def triad_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays ``(I, J, K)`` over all ``i < j < k`` in lexicographic order."""
    combos = np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)
    out = tuple(combos[:, c].copy() for c in range(3))
    for a in out:
        a.setflags(write=False)
    return out


def triad_values(m: PCMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized ``(x, y, z)`` arrays for every triad of ``m``, in :func:`triads` order."""
    I, J, K = triad_index(m.n)
    a = m.entries
    return a[I, J], a[I, K], a[J, K]


def triads(m: PCMatrix) -> list[Triad]:
    a = m.entries
    return [
        Triad(float(a[i, j]), float(a[i, k]), float(a[j, k]), i, j, k)
        for i, j, k in itertools.combinations(range(m.n), 3)
    ]


def is_consistent(m: PCMatrix, tol: float = RECIPROCITY_RTOL) -> bool:
    """True when every triad satisfies ``|y - x*z| <= tol * |y|``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    x, y, z = triad_values(m)
    return bool(np.all(np.abs(y - x * z) <= tol * np.abs(y)))


def to_additive(m: PCMatrix) -> AdditivePCMatrix:
    """Elementwise natural log; products in ``m`` become sums in the result."""
    n = m.n
    rows, cols = np.triu_indices(n, k=1)
    out = np.zeros((n, n))
    logs = np.log(m.entries[rows, cols])
    out[rows, cols] = logs
    out[cols, rows] = -logs
    return new_additive_matrix(out)


def to_multiplicative(a: AdditivePCMatrix) -> PCMatrix:
    """Elementwise exponential, inverse of :func:`to_additive`."""
    n = a.n
    rows, cols = np.triu_indices(n, k=1)
    out = np.ones((n, n))
    ratios = np.exp(a.entries[rows, cols])
    out[rows, cols] = ratios
    out[cols, rows] = 1.0 / ratios
    return new_pc_matrix(out)
