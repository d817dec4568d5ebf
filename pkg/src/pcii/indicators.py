"""Inconsistency indicators for triads and whole PC matrices.

Kii, ``1 - min(y / (x z), x z / y)``, is the normalized indicator. The raw
distance ``|y - x z|`` is kept alongside it because it is unbounded and
scale-dependent, which the experiments module exploits to show why it cannot
serve as an indicator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PCMatrix, triad_index
from .errors import NoConvergence, NonFiniteInput, NonPositiveInput, TooSmall
from .normalization import BELOW_ONE, below_one, exponential_kernel

TOLERANCE = 1.0 / 3.0
CI_TOL = 1e-10
CI_MAX_ITER = 10_000


def _check_positive(x: float, y: float, z: float) -> None:
    for name, v in (("x", x), ("y", y), ("z", z)):
        if not (math.isfinite(v) and v > 0):
            raise NonPositiveInput(f"triad component {name}={v!r} must be positive and finite")


def _log_ratio(x: float, y: float, z: float) -> float:
    return math.log(y) - math.log(x) - math.log(z)


def kii_triad(x: float, y: float, z: float) -> float:
    """Kii of one triad, in ``[0, 1)``; zero exactly when ``y == x * z``.

    >>> round(kii_triad(2, 5, 3), 12)
    0.166666666667
    """
    _check_positive(x, y, z)
    p = x * z
    if 0.0 < p < math.inf:
        q = y / p
        if 0.0 < q < math.inf:
            return below_one(1.0 - min(q, 1.0 / q))
    return exponential_kernel(abs(_log_ratio(x, y, z)))


def kii_triad_exp(x: float, y: float, z: float) -> float:
    """Kii as ``1 - exp(-|ln(y / (x z))|)``; agrees with :func:`kii_triad`."""
    _check_positive(x, y, z)
    p = x * z
    if 0.0 < p < math.inf and 0.0 < y / p < math.inf:
        t = abs(math.log(y / p))
    else:
        t = abs(_log_ratio(x, y, z))
    return exponential_kernel(t)


def distance_indicator_triad(x: float, y: float, z: float) -> float:
    """Euclidean distance ``|y - x z|``. Zero iff consistent, unbounded above."""
    _check_positive(x, y, z)
    return abs(y - x * z)


def relative_error_triad(x: float, y: float, z: float, *, denominator: str = "observed") -> float:
    """Relative error of ``y`` against its consistent value ``x z``.

    ``denominator="observed"`` divides by ``y``; ``"consistent"`` divides by
    the consistent value ``x z``, which treats ``x z`` as the truth.
    """
    _check_positive(x, y, z)
    if denominator == "observed":
        return abs(y - x * z) / y
    if denominator == "consistent":
        return abs(y - x * z) / (x * z)
    raise ValueError(f"denominator must be 'observed' or 'consistent', got {denominator!r}")


def zero_one_indicator(x: float, y: float, z: float, tol: float = 0.0) -> int:
    _check_positive(x, y, z)
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return 0 if abs(y - x * z) <= tol * y else 1


def additive_kii_triad(x: float, y: float, z: float) -> float:
    """Kii for a difference triad: ``1 - exp(-|y - (x + z)|)``."""
    for name, v in (("x", x), ("y", y), ("z", z)):
        if not math.isfinite(v):
            raise NonFiniteInput(f"triad component {name}={v!r} must be finite")
    return exponential_kernel(abs(y - (x + z)))


def kii_values(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`kii_triad`; same operation order, so results match bitwise."""
    x, y, z = (np.asarray(a, dtype=float) for a in (x, y, z))
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        q = y / (x * z)
        out = 1.0 - np.minimum(q, 1.0 / q)
        odd = ~((q > 0) & np.isfinite(q) & (x * z > 0) & np.isfinite(x * z))
    if odd.any():
        t = np.abs(np.log(y[odd]) - np.log(x[odd]) - np.log(z[odd]))
        out[odd] = -np.expm1(-t)
    return np.minimum(out, BELOW_ONE)


@dataclass(frozen=True)
class TriadRecord:
    indices: tuple[int, int, int]
    x: float
    y: float
    z: float
    kii: float
    distance: float
    relative_error: float


@dataclass(frozen=True)
class IndicatorReport:
    """Per-triad values and their matrix-level summary.

    ``matrix_kii`` is the maximum Kii over all triads and ``worst_triad`` the
    lexicographically first triad attaining it. ``consistent`` compares
    ``matrix_kii`` against ``tolerance`` (strictly below counts as acceptable).
    """

    per_triad: tuple[TriadRecord, ...]
    matrix_kii: float
    worst_triad: tuple[int, int, int]
    ci: float
    consistent: bool
    tolerance: float = TOLERANCE


def matrix_kii(m: PCMatrix) -> tuple[float, tuple[int, int, int]]:
    """Maximum triad Kii of ``m`` and the first triad attaining it."""
    if m.n < 3:
        raise TooSmall(f"inconsistency needs n >= 3, got n={m.n}")
    I, J, K = triad_index(m.n)
    a = m.entries
    values = kii_values(a[I, J], a[I, K], a[J, K])
    w = int(np.argmax(values))  # argmax returns the first maximum
    return float(values[w]), (int(I[w]), int(J[w]), int(K[w]))


def kii_matrix(m: PCMatrix, tolerance: float = TOLERANCE) -> IndicatorReport:
    if m.n < 3:
        raise TooSmall(f"inconsistency needs n >= 3, got n={m.n}")
    I, J, K = triad_index(m.n)
    a = m.entries
    records = []
    for i, j, k in zip(I.tolist(), J.tolist(), K.tolist()):
        x, y, z = float(a[i, j]), float(a[i, k]), float(a[j, k])
        records.append(
            TriadRecord(
                indices=(i, j, k),
                x=x,
                y=y,
                z=z,
                kii=kii_triad(x, y, z),
                distance=distance_indicator_triad(x, y, z),
                relative_error=relative_error_triad(x, y, z),
            )
        )
    worst = max(records, key=lambda r: r.kii)  # max keeps the first on ties
    return IndicatorReport(
        per_triad=tuple(records),
        matrix_kii=worst.kii,
        worst_triad=worst.indices,
        ci=saaty_ci(m),
        consistent=worst.kii < tolerance,
        tolerance=tolerance,
    )


def principal_eigenvalue(m: PCMatrix, tol: float = CI_TOL, max_iter: int = CI_MAX_ITER) -> float:
    """Dominant eigenvalue by power iteration from the all-ones vector.

    Stops once successive estimates differ by at most ``tol``.
    """
    a = m.entries
    v = np.full(m.n, 1.0 / m.n)
    lam = math.nan
    for _ in range(max_iter):
        w = a @ v
        new = float(w.sum())  # v sums to 1, so this is the Collatz estimate
        v = w / new
        if abs(new - lam) <= tol:
            return new
        lam = new
    raise NoConvergence(f"power iteration did not settle within {max_iter} iterations")


def saaty_ci(m: PCMatrix) -> float:
    """Eigenvalue consistency index ``(lambda_max - n) / (n - 1)``."""
    if m.n < 3:
        raise TooSmall(f"CI needs n >= 3, got n={m.n}")
    ci = (principal_eigenvalue(m) - m.n) / (m.n - 1)
    if -1e-9 < ci < 0.0:
        ci = 0.0
    return ci
