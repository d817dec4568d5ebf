"""Monotone maps from ``[0, inf)`` onto ``[0, 1)`` and unit-interval checks.

Every map sends 0 to 0 and saturates toward 1 without reaching it. Where the
exact value lies closer to 1 than the spacing of doubles allows, results are
held at the largest double below 1 so the open upper bound survives rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeInput, NonFiniteInput

BELOW_ONE = math.nextafter(1.0, 0.0)

KINDS = ("exponential", "logistic", "gompertz")
_DEFAULTS = {
    "exponential": {},
    "logistic": {"k": 1.0},
    "gompertz": {"b": 1.0, "c": 1.0},
}


def below_one(value: float) -> float:
    """Clamp a value in ``[0, 1]`` into ``[0, 1)``."""
    return value if value < 1.0 else BELOW_ONE


def exponential_kernel(t: float) -> float:
    """``1 - exp(-t)`` evaluated without cancellation near 0."""
    return below_one(-math.expm1(-t))


@dataclass(frozen=True)
class NormalizationMap:
    """A named normalizing map with its shape parameters.

    ``logistic`` is ``2 / (1 + exp(-k t)) - 1``; ``gompertz`` is
    ``(exp(-b exp(-c t)) - exp(-b)) / (1 - exp(-b))``. Both are shifted and
    rescaled so that 0 maps to 0.
    """

    kind: str = "exponential"
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown normalization kind {self.kind!r}; expected one of {KINDS}")
        params = dict(_DEFAULTS[self.kind])
        unknown = set(self.parameters) - set(params)
        if unknown:
            raise ValueError(f"{self.kind} map takes no parameters {sorted(unknown)}")
        params.update(self.parameters)
        for name, value in params.items():
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"parameter {name}={value!r} must be positive and finite")
        object.__setattr__(self, "parameters", params)

    def __call__(self, t: float) -> float:
        return apply(self, t)


def apply(nmap: NormalizationMap, t: float) -> float:
    t = float(t)
    if math.isnan(t) or math.isinf(t):
        raise NonFiniteInput(f"cannot normalize non-finite value {t!r}")
    if t < 0:
        raise NegativeInput(f"cannot normalize negative value {t!r}")

    p = nmap.parameters
    if nmap.kind == "exponential":
        return exponential_kernel(t)
    if nmap.kind == "logistic":
        # 2/(1+e^-kt) - 1 == tanh(kt/2)
        return below_one(math.tanh(p["k"] * t / 2.0))
    b, c = p["b"], p["c"]
    # numerator exp(-b e^{-ct}) - exp(-b), factored to stay accurate for small c*t
    num = math.exp(-b) * math.expm1(b * -math.expm1(-c * t))
    return below_one(num / -math.expm1(-b))


def closed_under_product(t: float, u: float) -> bool:
    """Whether ``t * u`` stays in ``[0, 1]`` for ``t, u`` in ``[0, 1]``."""
    return 0.0 <= t * u <= 1.0


def square_exceeds(alpha: float) -> bool:
    """Whether ``(1 + alpha)**2 > 1 + alpha``, i.e. ``[0, 1 + alpha]`` is not closed."""
    return (1.0 + alpha) * (1.0 + alpha) > 1.0 + alpha


def check_unit_interval_stability(samples: int, seed: int) -> bool:
    """Sample-based witness that ``[0, 1]`` is closed under multiplication
    and that no interval ``[0, 1 + alpha]`` with ``alpha > 0`` is.

    Draws ``samples`` pairs ``t, u`` in ``[0, 1]`` and ``samples`` values
    ``alpha`` in ``(0, 1]``. The boundary points ``t = u = 1`` and
    ``alpha = 1`` are always included.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    t = np.append(rng.random(samples), [0.0, 1.0])
    u = np.append(rng.random(samples), [1.0, 1.0])
    prod = t * u
    closed = bool(np.all((prod >= 0.0) & (prod <= 1.0)))

    alpha = np.append(1.0 - rng.random(samples), 1.0)
    grown = (1.0 + alpha) * (1.0 + alpha)
    escapes = bool(np.all(grown > 1.0 + alpha))
    return closed and escapes
