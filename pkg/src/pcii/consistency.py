"""Building consistent matrices and pushing inconsistent ones toward consistency."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from .core import PCMatrix, Triad, new_pc_matrix, triad_values
from .errors import NonPositiveGenerator, NonPositiveRatio, NotATree, TooSmall, WrongCount
from .indicators import TOLERANCE, kii_values, matrix_kii

ELEMENTS = ("x", "y", "z")


@dataclass(frozen=True)
class GeneratorSet:
    """The ``n - 1`` ratios ``A[i, i + 1]`` just above the diagonal."""

    n: int
    generators: tuple[float, ...]

    def __post_init__(self):
        gens = tuple(float(g) for g in self.generators)
        if self.n < 2 or len(gens) != self.n - 1:
            raise WrongCount(f"n={self.n} needs {self.n - 1} generators, got {len(gens)}")
        for i, g in enumerate(gens):
            if not (math.isfinite(g) and g > 0):
                raise NonPositiveGenerator(f"generator {g!r} must be positive and finite", cell=(i, i + 1))
        object.__setattr__(self, "generators", gens)


def complete_from_generators(g: GeneratorSet) -> PCMatrix:
    """Consistent matrix with ``A[i, k] = g[i] * g[i+1] * ... * g[k-1]``."""
    n = g.n
    a = np.ones((n, n))
    for i in range(n):
        prod = 1.0
        for k in range(i + 1, n):
            prod *= g.generators[k - 1]
            a[i, k] = prod
            a[k, i] = 1.0 / prod
    return new_pc_matrix(a)


def complete_from_tree(n: int, edges: Sequence[tuple[int, int, float]]) -> PCMatrix:
    """Unique consistent completion of ratios given on a spanning tree.

    Each edge ``(i, j, r)`` fixes ``A[i, j] = r``. Every other entry is the
    product of edge ratios along the tree path, taken in path order, so a
    chain ``(0, 1), (1, 2), ...`` reproduces :func:`complete_from_generators`
    exactly.

    Raises:
        NotATree: the edges contain a cycle, a repeated pair, a self-loop,
            an out-of-range node, or leave some node unreachable.
        NonPositiveRatio: an edge ratio is not positive and finite.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for i, j, r in edges:
        i, j, r = int(i), int(j), float(r)
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise NotATree(f"edge ({i}, {j}) is not between two distinct nodes of 0..{n - 1}")
        if not (math.isfinite(r) and r > 0):
            raise NonPositiveRatio(f"edge ratio {r!r} must be positive and finite", cell=(i, j))
        if graph.has_edge(i, j):
            raise NotATree(f"edge ({i}, {j}) given twice")
        graph.add_edge(i, j, ratio={(i, j): r, (j, i): 1.0 / r})
    if n < 2 or not nx.is_tree(graph):
        raise NotATree(f"{len(edges)} edges do not form a spanning tree on {n} nodes")

    a = np.ones((n, n))
    for i in range(n):
        paths = nx.single_source_shortest_path(graph, i)
        for k in range(i + 1, n):
            path = paths[k]
            prod = 1.0
            for u, v in zip(path, path[1:]):
                prod *= graph.edges[u, v]["ratio"][(u, v)]
            a[i, k] = prod
            a[k, i] = 1.0 / prod
    return new_pc_matrix(a)


def consistent_alternatives(t: Triad) -> tuple[float, float, float]:
    """Replacement value for each element that alone makes ``t`` consistent.

    >>> consistent_alternatives(Triad(2, 5, 3))
    (1.6666666666666667, 6.0, 2.5)
    """
    return (t.y / t.z, t.x * t.z, t.y / t.x)


@dataclass(frozen=True)
class ReductionStep:
    step: int
    worst_triad: tuple[int, int, int]
    element: str
    old_value: float
    new_value: float
    matrix_kii: float
    blend: float = 1.0


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    converged: bool
    final: PCMatrix
    initial_kii: float


# a step that fails to improve the Kii profile is retried with the blend
# halved, at most this many times
MAX_HALVINGS = 10


def _profile(m: PCMatrix) -> tuple[float, ...]:
    """All triad Kii values, largest first; compared lexicographically."""
    return tuple(np.sort(kii_values(*triad_values(m)))[::-1].tolist())


def _blend(old: float, fix: float, blend: float) -> float:
    if blend == 1.0:
        return fix
    return old ** (1.0 - blend) * fix ** blend


def _with_entry(a: np.ndarray, r: int, c: int, value: float) -> PCMatrix:
    trial = a.copy()
    trial[r, c] = value
    trial[c, r] = 1.0 / value
    return new_pc_matrix(trial)


def _choose(m: PCMatrix):
    """Worst triad and the element whose full fix leaves the best profile.

    Returns None for a consistent matrix, else
    ``((i, j, k), element, (r, c), old, fix)``.
    """
    worst_kii, (i, j, k) = matrix_kii(m)
    if worst_kii == 0.0:
        return None
    a = m.entries
    triad = Triad(float(a[i, j]), float(a[i, k]), float(a[j, k]), i, j, k)
    cells = ((i, j), (i, k), (j, k))
    best = None
    for element, cell, old, fix in zip(ELEMENTS, cells, triad.values, consistent_alternatives(triad)):
        score = _profile(_with_entry(a, *cell, fix))
        if best is None or score < best[0]:
            best = (score, element, cell, old, fix)
    _, element, cell, old, fix = best
    return (i, j, k), element, cell, old, fix


def _check_blend(blend: float) -> None:
    if not 0.0 < blend <= 1.0:
        raise ValueError(f"blend must lie in (0, 1], got {blend!r}")


def reduce_step(m: PCMatrix, blend: float = 1.0) -> PCMatrix:
    """One greedy repair of the worst triad.

    Each of the worst triad's three entries is tried at its consistent
    alternative. The winner leaves the smallest matrix Kii; ties go to the
    smaller second-largest triad Kii, and so on, then to x, y, z order. The
    winning entry is then set to ``old**(1 - blend) * fix**blend``. A
    consistent matrix is returned unchanged.
    """
    if m.n < 3:
        raise TooSmall(f"reduction needs n >= 3, got n={m.n}")
    _check_blend(blend)
    choice = _choose(m)
    if choice is None:
        return m
    _, _, (r, c), old, fix = choice
    return _with_entry(m.entries, r, c, _blend(old, fix, blend))


def reduce(
    m: PCMatrix,
    tolerance: float = TOLERANCE,
    max_iter: int = 1000,
    blend: float = 1.0,
) -> ReductionTrace:
    """Apply :func:`reduce_step` until matrix Kii drops below ``tolerance``.

    Full fixes can cycle when two bad triads share an entry and pull it in
    opposite directions. So a step whose sorted Kii profile is not strictly
    smaller than before is redone with the blend halved, up to
    ``MAX_HALVINGS`` times; the last attempt is kept regardless. Each step
    records the blend it used.

    Running out of iterations is not an error; the trace reports
    ``converged=False``.
    """
    if m.n < 3:
        raise TooSmall(f"reduction needs n >= 3, got n={m.n}")
    _check_blend(blend)
    if not 0.0 < tolerance < 1.0:
        raise ValueError(f"tolerance must lie in (0, 1), got {tolerance!r}")

    current = m
    kii, _ = matrix_kii(m)
    initial = kii
    profile = _profile(m)
    steps: list[ReductionStep] = []
    while kii >= tolerance and len(steps) < max_iter:
        choice = _choose(current)
        if choice is None:
            break
        worst, element, (r, c), old, fix = choice
        b = blend
        for _ in range(MAX_HALVINGS + 1):
            new = _blend(old, fix, b)
            candidate = _with_entry(current.entries, r, c, new)
            cand_profile = _profile(candidate)
            if cand_profile < profile:
                break
            b /= 2
        else:
            b *= 2
        current, profile, kii = candidate, cand_profile, cand_profile[0]
        steps.append(ReductionStep(len(steps) + 1, worst, element, old, new, kii, b))
    return ReductionTrace(tuple(steps), kii < tolerance, current, initial)
