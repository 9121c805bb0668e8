"""Restricted isometry certification.

The isometry constant of order T is the smallest delta with
(1 - delta)||x||^2 <= ||phi x||^2 <= (1 + delta)||x||^2 over all T-sparse
x; equivalently the worst deviation of any T-column Gram spectrum from 1.
At desk scale that maximum is computed exactly by enumerating every
T-subset; beyond the enumeration budget a sampled lower bound stands in.

The module also evaluates the sufficient conditions under which the
pursuit algorithms provably recover every T-sparse signal, against either
measured constants or a fitted model (anything that maps order -> delta).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Callable, Mapping

import numpy as np

from .errors import BudgetExceeded, OrderOutOfRange
from .model import as_matrix

logger = logging.getLogger(__name__)

ENUMERATION_BUDGET = 2_000_000
PROGRESS_EVERY = 100_000
_CHUNK = 100_000


@dataclass
class RipReport:
    """Per-order isometry constants and how they were obtained."""

    orders: list[int]
    deltas: list[float]
    method: str                 # "exact_enumeration" | "monte_carlo_lower_bound"
    subsets_evaluated: list[int]
    seed: int | None = None

    def delta_at(self, order: int) -> float:
        try:
            return self.deltas[self.orders.index(order)]
        except ValueError:
            raise OrderOutOfRange(f"no delta recorded for order {order}")

    def as_table(self) -> dict[int, float]:
        return dict(zip(self.orders, self.deltas))


def _max_gram_deviation(mat: np.ndarray, subsets: np.ndarray) -> float:
    """Worst eigenvalue deviation from 1 over a batch of column subsets."""
    cols = mat[:, subsets]                      # (m, n_subsets, t)
    grams = np.einsum("msi,msj->sij", cols, cols)
    eigs = np.linalg.eigvalsh(grams)
    return float(np.max(np.maximum(eigs[:, -1] - 1.0, 1.0 - eigs[:, 0])))


def rip_constant_exact(
    phi, t: int, budget: int = ENUMERATION_BUDGET
) -> float:
    """Exact order-t isometry constant by enumerating all C(n, t) column
    subsets in lexicographic order.

    Raises BudgetExceeded when the subset count is above `budget`; use
    rip_constant_lower_bound in that regime.
    """
    mat = as_matrix(phi)
    m, n = mat.shape
    if not 1 <= t <= min(m, n):
        raise ValueError(f"order t={t} out of range for shape {mat.shape}")
    total = math.comb(n, t)
    if total > budget:
        raise BudgetExceeded(
            f"C({n},{t}) = {total} subsets exceed the budget of {budget}"
        )
    worst = 0.0
    done = 0
    gen = combinations(range(n), t)
    while True:
        chunk = np.array(list(islice(gen, _CHUNK)), dtype=int)
        if chunk.size == 0:
            break
        worst = max(worst, _max_gram_deviation(mat, chunk))
        done += len(chunk)
        if done % PROGRESS_EVERY == 0:
            logger.debug("enumerated %d/%d subsets of order %d", done, total, t)
    return worst


def rip_constant_lower_bound(
    phi, t: int, samples: int, seed: int
) -> float:
    """Lower bound on the order-t constant from uniformly sampled subsets.

    Never exceeds the exact value. When the sample budget covers the whole
    subset space the enumeration runs instead, so the bound is tight there.
    """
    mat = as_matrix(phi)
    m, n = mat.shape
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 1 <= t <= min(m, n):
        raise ValueError(f"order t={t} out of range for shape {mat.shape}")
    total = math.comb(n, t)
    if samples >= total:
        return rip_constant_exact(phi, t, budget=max(total, ENUMERATION_BUDGET))
    rng = np.random.default_rng(seed)
    worst = 0.0
    remaining = samples
    while remaining > 0:
        batch = min(remaining, _CHUNK)
        subsets = np.array(
            [np.sort(rng.choice(n, size=t, replace=False)) for _ in range(batch)],
            dtype=int,
        )
        worst = max(worst, _max_gram_deviation(mat, subsets))
        remaining -= batch
    return worst


def exact_report(
    phi, orders: list[int], budget: int = ENUMERATION_BUDGET
) -> RipReport:
    """Exact constants for several orders bundled into one report."""
    mat = as_matrix(phi)
    n = mat.shape[1]
    deltas = [rip_constant_exact(mat, t, budget) for t in orders]
    return RipReport(
        orders=list(orders),
        deltas=deltas,
        method="exact_enumeration",
        subsets_evaluated=[math.comb(n, t) for t in orders],
    )


DeltaLookup = Mapping[int, float] | Callable[[int], float]


def _delta(delta_at: DeltaLookup, order: int) -> float:
    """Resolve order -> delta from a mapping, a callable, or anything with a
    delta_at method (RipReport, DeltaModel)."""
    if isinstance(delta_at, Mapping):
        try:
            return float(delta_at[order])
        except KeyError:
            raise OrderOutOfRange(f"no delta available for order {order}")
    method = getattr(delta_at, "delta_at", None)
    if method is not None:
        return float(method(order))
    return float(delta_at(order))


def omp_exact_recovery_condition(delta_t_plus_1: float, t: int) -> bool:
    """Sufficient condition for OMP to recover every t-sparse signal:
    the order-(t+1) constant must be strictly below 1/(1 + sqrt(t))."""
    if delta_t_plus_1 < 0:
        raise ValueError("delta must be >= 0")
    return delta_t_plus_1 < 1.0 / (1.0 + math.sqrt(t))


def komp_exact_recovery_condition(
    delta_at: DeltaLookup, t: int, k: int
) -> bool:
    """Sufficient condition for K-fold OMP to recover every t-sparse signal.

    Requires, strictly for every iteration i = 1..t,
        delta_{t + (k-2) i + k} < 1 / (1 + sqrt((t - i + 1) / k)),
    plus delta_{k t} < 1 so the final projection identifies the support.
    Raises OrderOutOfRange if the lookup lacks a required order.
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be >= 1")
    for i in range(1, t + 1):
        order = t + (k - 2) * i + k
        bound = 1.0 / (1.0 + math.sqrt((t - i + 1) / k))
        if not _delta(delta_at, order) < bound:
            return False
    return _delta(delta_at, k * t) < 1.0


def verify_growth_law(report: RipReport) -> bool:
    """Check the sub-linear growth of exact constants: non-decreasing in
    the order, and delta_T <= T * delta_2 (plus 1e-9 slack) for every
    reported order."""
    table = report.as_table()
    if 2 not in table:
        raise OrderOutOfRange("growth check needs the order-2 constant")
    d2 = table[2]
    pairs = sorted(table.items())
    for (o1, v1), (o2, v2) in zip(pairs, pairs[1:]):
        if v2 < v1 - 1e-9:
            return False
    return all(v <= o * d2 + 1e-9 for o, v in pairs)
