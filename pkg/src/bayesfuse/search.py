"""Brute-force minimization of the loss objectives over a simplex grid.

These searches are deliberately independent of the closed-form posterior
formulas: they enumerate every probability vector whose masses are integer
multiples of ``1/K`` on the joint support, evaluate the chosen objective
on each, and report the grid minimizer.  Watching the argmin converge to
the closed form as ``K`` grows is the package's empirical check that the
product-rule (and weighted) posteriors really are the optimizers.

Enumeration is lexicographic and the reduction keeps the first minimum
seen, so results are bit-identical no matter how the scan is chunked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .combine import WeightedPair, check_compatible, joint_support
from .dists import DiscreteDist, normalize
from .errors import IncompatibleError, RepresentationMismatchError, TooLargeError
from .information import max_loss_exhaustive, weighted_max_loss_exhaustive

EVALUATION_BUDGET = 10**8

_CROSS_CHECK_MAX_ATOMS = 12
_CROSS_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class SimplexGrid:
    """All probability vectors on ``n`` atoms with masses in ``{0, 1/K, ..., 1}``."""

    n: int
    K: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one atom")
        if self.K < 1:
            raise ValueError("resolution K must be at least 1")

    @property
    def count(self) -> int:
        return math.comb(self.K + self.n - 1, self.n - 1)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one exhaustive scan over a simplex grid."""

    argmin: DiscreteDist
    min_value: float
    runner_up_value: float
    evaluated_count: int

    def __post_init__(self) -> None:
        if self.min_value > self.runner_up_value:
            raise ValueError("minimum exceeds the runner-up value")
        if self.evaluated_count < 1:
            raise ValueError("no candidates were evaluated")


def _compositions(n: int, K: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (K,)
        return
    for first in range(K + 1):
        for rest in _compositions(n - 1, K - first):
            yield (first,) + rest


def enumerate_simplex(n: int, K: int) -> Iterator[tuple[float, ...]]:
    """Yield every grid mass vector once, in lexicographic order.

    There are ``C(K+n-1, n-1)`` of them; requests above the evaluation
    budget of ``10**8`` raise :class:`TooLargeError`.
    """
    grid = SimplexGrid(n, K)
    if grid.count > EVALUATION_BUDGET:
        raise TooLargeError(
            f"{grid.count} grid points exceed the budget of {EVALUATION_BUDGET}"
        )
    for comp in _compositions(n, K):
        yield tuple(c / K for c in comp)


def _scan(
    n: int,
    K: int,
    evaluate_rows: Callable[[np.ndarray], np.ndarray],
    chunk_size: int = 16384,
) -> tuple[float, tuple[int, ...], float, int]:
    best_value = math.inf
    best_comp: tuple[int, ...] | None = None
    runner_up = math.inf
    evaluated = 0

    def consume(buffer: list[tuple[int, ...]]) -> None:
        nonlocal best_value, best_comp, runner_up, evaluated
        rows = np.asarray(buffer, dtype=np.float64) / K
        values = evaluate_rows(rows)
        i = int(np.argmin(values))
        chunk_best = float(values[i])
        chunk_second = (
            float(np.partition(values, 1)[1]) if values.size > 1 else math.inf
        )
        evaluated += values.size
        if chunk_best < best_value:
            runner_up = min(best_value, chunk_second)
            best_value, best_comp = chunk_best, buffer[i]
        else:
            runner_up = min(runner_up, chunk_best)

    buffer: list[tuple[int, ...]] = []
    for comp in _compositions(n, K):
        buffer.append(comp)
        if len(buffer) >= chunk_size:
            consume(buffer)
            buffer = []
    if buffer:
        consume(buffer)
    assert best_comp is not None
    return best_value, best_comp, runner_up, evaluated


def _prepare(p0: DiscreteDist, like: DiscreteDist, K: int):
    if not isinstance(p0, DiscreteDist) or not isinstance(like, DiscreteDist):
        raise RepresentationMismatchError("simplex searches take discrete inputs")
    if not check_compatible(p0, like).compatible:
        raise IncompatibleError("prior and likelihood are not compatible")
    keys = joint_support(p0, like)
    grid = SimplexGrid(len(keys), int(K))
    if grid.count > EVALUATION_BUDGET:
        raise TooLargeError(
            f"{grid.count} grid points exceed the budget of {EVALUATION_BUDGET}"
        )
    p0_m, like_m = p0.as_dict(), like.as_dict()
    u = np.array([p0_m[k] for k in keys])
    v = np.array([like_m[k] for k in keys])
    return keys, u, v, grid


def _result(
    keys: tuple[str, ...], K: int, scan: tuple[float, tuple[int, ...], float, int]
) -> SearchResult:
    value, comp, runner_up, evaluated = scan
    argmin = normalize(zip(keys, (c / K for c in comp)))
    return SearchResult(argmin, value, runner_up, evaluated)


def default_resolution(n: int) -> int:
    """Grid resolution giving roughly 2% localization within the budget."""
    return 200 if n <= 3 else 60


def minimize_max_loss(
    p0: DiscreteDist, like: DiscreteDist, K: int, chunk_size: int = 16384
) -> SearchResult:
    """Scan the simplex grid for the pmf with the smallest maximum information loss."""
    keys, u, v, grid = _prepare(p0, like, K)
    denom = u * v

    def evaluate(rows: np.ndarray) -> np.ndarray:
        return np.log2((rows / denom).max(axis=1))

    result = _result(keys, K, _scan(grid.n, grid.K, evaluate, chunk_size))
    if grid.n <= _CROSS_CHECK_MAX_ATOMS:
        full = max_loss_exhaustive(result.argmin, p0, like)
        if abs(full.value - result.min_value) > _CROSS_CHECK_TOL:
            raise AssertionError(
                "singleton fast path disagrees with exhaustive event enumeration"
            )
    return result


def minimize_weighted_loss(
    pair: WeightedPair, K: int, chunk_size: int = 16384
) -> SearchResult:
    """Grid search against the weighted maximum-loss objective."""
    keys, u, v, grid = _prepare(pair.prior, pair.likelihood, K)
    a, b = pair.exponents
    denom = u**a * v**b

    def evaluate(rows: np.ndarray) -> np.ndarray:
        return np.log2((rows / denom).max(axis=1))

    result = _result(keys, K, _scan(grid.n, grid.K, evaluate, chunk_size))
    if grid.n <= _CROSS_CHECK_MAX_ATOMS:
        full = weighted_max_loss_exhaustive(result.argmin, pair)
        if abs(full.value - result.min_value) > _CROSS_CHECK_TOL:
            raise AssertionError(
                "singleton fast path disagrees with exhaustive event enumeration"
            )
    return result


def minimize_mlr_spread(
    p0: DiscreteDist, like: DiscreteDist, K: int, chunk_size: int = 16384
) -> SearchResult:
    """Grid search for the pmf with the smallest likelihood-ratio spread."""
    keys, u, v, grid = _prepare(p0, like, K)
    denom = u * v

    def evaluate(rows: np.ndarray) -> np.ndarray:
        ratios = rows / denom
        return ratios.max(axis=1) - ratios.min(axis=1)

    return _result(keys, K, _scan(grid.n, grid.K, evaluate, chunk_size))
