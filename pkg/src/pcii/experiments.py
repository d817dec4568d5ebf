"""Numerical demonstrations that an unnormalized distance is not an indicator.

The triads ``T_n = (x**n, x**(2n) + c, x**n)`` sit at constant distance
``c`` from consistency while their relative error and Kii both fall to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .consistency import GeneratorSet, complete_from_generators
from .core import Triad, from_upper_triangle, triad_values
from .errors import Overflow
from .indicators import (
    distance_indicator_triad,
    kii_triad,
    kii_values,
    relative_error_triad,
    saaty_ci,
)

GENERATOR_RANGE = 9.0
MC_INDICATORS = ("kii", "distance", "ci")


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    triad: Triad
    distance: float
    relative_error: float
    kii: float


def tn_triad(x: float, n: int, c: float = 1.0) -> Triad:
    """The triad ``(x**n, x**(2n) + c, x**n)``.

    Raises:
        Overflow: ``x**(2n) + c`` is not a finite double (for ``x = 2`` this
            happens from ``n = 512``).
    """
    if not x > 1:
        raise ValueError(f"x must exceed 1, got {x!r}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (math.isfinite(c) and c > 0):
        raise ValueError(f"offset c must be positive and finite, got {c!r}")
    try:
        outer = float(x) ** n
        middle = float(x) ** (2 * n) + c
    except OverflowError:
        raise Overflow(f"x**(2n) overflows for x={x!r}, n={n}") from None
    if not math.isfinite(middle):
        raise Overflow(f"x**(2n) + c overflows for x={x!r}, n={n}, c={c!r}")
    return Triad(outer, middle, outer)


def constant_offset_table(x: float, c: float, n_max: int) -> list[ConvergenceRow]:
    """Rows ``n = 1..n_max`` for the offset-``c`` sequence.

    Once ``x**(2n)`` dwarfs ``c`` by more than the float mantissa, the
    offset is absorbed and the computed distance no longer equals ``c``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        t = tn_triad(x, n, c)
        rows.append(
            ConvergenceRow(
                n=n,
                triad=t,
                distance=distance_indicator_triad(*t.values),
                relative_error=relative_error_triad(*t.values),
                kii=kii_triad(*t.values),
            )
        )
    return rows


def convergence_table(x: float, n_max: int) -> list[ConvergenceRow]:
    return constant_offset_table(x, 1.0, n_max)


@dataclass(frozen=True)
class StickTriad:
    triad: Triad
    distance: float
    relative_error: float  # against the observed middle value
    relative_error_true: float  # against the consistent value x*z


@dataclass(frozen=True)
class StickComparison:
    a: StickTriad
    b: StickTriad


def _stick(x: float, y: float, z: float) -> StickTriad:
    return StickTriad(
        triad=Triad(x, y, z),
        distance=distance_indicator_triad(x, y, z),
        relative_error=relative_error_triad(x, y, z),
        relative_error_true=relative_error_triad(x, y, z, denominator="consistent"),
    )


def stick_example() -> StickComparison:
    """Equal sticks misjudged as (1, 2, 1) versus tenfold sticks judged (10, 101, 10).

    Both lie at distance 1 from consistency, yet the first is 100% off and
    the second only 1%.
    """
    return StickComparison(a=_stick(1.0, 2.0, 1.0), b=_stick(10.0, 101.0, 10.0))


@dataclass(frozen=True)
class IndicatorStats:
    mean: float
    max: float
    rank_correlation: float | None  # Spearman rho against max relative error; None if undefined


@dataclass(frozen=True)
class MonteCarloSummary:
    n: int
    trials: int
    perturbation: float
    seed: int
    reference_mean: float
    reference_max: float
    indicators: dict[str, IndicatorStats]


def perturbed_matrix(n: int, perturbation: float, rng: np.random.Generator):
    """Consistent matrix from log-uniform generators in ``[1/9, 9]``, with every
    upper-triangle entry scaled by a log-uniform factor in ``[1/p, p]``."""
    span = math.log(GENERATOR_RANGE)
    gens = np.exp(rng.uniform(-span, span, n - 1))
    base = complete_from_generators(GeneratorSet(n, tuple(gens.tolist())))
    noise = math.log(perturbation)
    factors = np.exp(rng.uniform(-noise, noise, n * (n - 1) // 2))
    upper = np.asarray(base.upper_triangle()) * factors
    return from_upper_triangle(n, upper.tolist())


def trial_values(n: int, perturbation: float, seed: int, index: int) -> dict[str, float]:
    """Indicator values for one trial. The trial's random stream depends only
    on ``(seed, index)``, so trials can run in any order or in parallel."""
    rng = np.random.default_rng([seed, index])
    m = perturbed_matrix(n, perturbation, rng)
    x, y, z = triad_values(m)
    return {
        "kii": float(kii_values(x, y, z).max()),
        "distance": float(np.abs(y - x * z).max()),
        "ci": saaty_ci(m),
        "relative_error": float((np.abs(y - x * z) / y).max()),
    }


def _spearman(a: np.ndarray, b: np.ndarray) -> float | None:
    if len(a) < 2 or np.all(a == a[0]) or np.all(b == b[0]):
        return None
    return float(stats.spearmanr(a, b).statistic)


def monte_carlo_comparison(n: int, trials: int, perturbation: float, seed: int) -> MonteCarloSummary:
    """How well each indicator ranks random matrices by their worst relative error."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not perturbation >= 1:
        raise ValueError(f"perturbation must be >= 1, got {perturbation!r}")

    rows = [trial_values(n, perturbation, seed, t) for t in range(trials)]
    reference = np.array([r["relative_error"] for r in rows])
    summary = {}
    for name in MC_INDICATORS:
        values = np.array([r[name] for r in rows])
        summary[name] = IndicatorStats(
            mean=float(values.mean()),
            max=float(values.max()),
            rank_correlation=_spearman(values, reference),
        )
    return MonteCarloSummary(
        n=n,
        trials=trials,
        perturbation=float(perturbation),
        seed=seed,
        reference_mean=float(reference.mean()),
        reference_max=float(reference.max()),
        indicators=summary,
    )
