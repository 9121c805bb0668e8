"""Matching-pursuit family: orthogonal matching pursuit (OMP), K-fold OMP
that widens each greedy pick to K atoms, and the hybrid variant whose
selection width shrinks over iterations.

All three share one engine. Each iteration correlates the residual with
every unselected column, picks the `width` strongest by |phi_i' r| (ties
toward the lower index), re-projects the measurements onto everything
selected so far, and subtracts that projection to form the new residual.
Because the selected span only ever grows, the residual norm is
non-increasing, and after every projection the residual is orthogonal to
each selected column; both facts are tracked on the result so callers can
audit them.

The final estimate carries the last least-squares coefficients on the
selected set and zeros elsewhere; K-fold runs leave up to K*T nonzeros and
are typically truncated afterwards (`truncate_result`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularProjection, UnstableWidth
from .linalg import least_squares
from .model import as_matrix, best_t_term

# Residual this small relative to ||y|| counts as an exact fit.
ZERO_RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class SelectionRule:
    """How many atoms a pursuit picks at iteration t (1-based).

    kind "fixed_k" picks k every iteration (k=1 is plain OMP); kind
    "hybrid_alpha" picks max(1, ceil(alpha * (T - t + 1))) so early
    iterations grab more atoms than late ones.
    """

    kind: str = "fixed_k"
    k: int = 1
    alpha: float = 1.0

    def widths(self, t_iterations: int) -> list[int]:
        if self.kind == "fixed_k":
            if self.k < 1:
                raise ValueError("k must be >= 1")
            return [self.k] * t_iterations
        if self.kind == "hybrid_alpha":
            if not 0.0 < self.alpha <= 1.0:
                raise ValueError("alpha must lie in (0, 1]")
            return [
                max(1, math.ceil(self.alpha * (t_iterations - t + 1)))
                for t in range(1, t_iterations + 1)
            ]
        raise ValueError(f"unknown selection rule {self.kind!r}")


@dataclass
class PursuitState:
    """Snapshot after one pursuit iteration."""

    t: int
    lambda_t: np.ndarray            # sorted selected indices
    residual: np.ndarray
    coeffs: dict[int, float]        # projection coefficients on lambda_t
    residual_norm_history: list[float]  # ||r_0|| .. ||r_t||


@dataclass
class PursuitResult:
    """Outcome of a pursuit or baseline run.

    `max_selected_correlation` is the largest |phi_i' r_t| / ||y|| seen over
    selected atoms right after a projection, and `max_residual_increase`
    the largest consecutive growth of the residual norm; both should sit at
    roundoff level for the pursuit family.
    """

    estimate: np.ndarray
    support: np.ndarray             # sorted indices of retained atoms
    states: list[PursuitState]
    iterations_run: int
    stopped_early: bool
    stop_reason: str | None
    residual: np.ndarray
    residual_norm_history: list[float]
    max_selected_correlation: float = 0.0
    max_residual_increase: float = -math.inf


def _run_pursuit(
    mat: np.ndarray,
    y: np.ndarray,
    widths: list[int],
    keep_states: bool = True,
) -> PursuitResult:
    m, n = mat.shape
    y = np.asarray(y, dtype=float)
    if y.shape != (m,):
        raise ValueError(f"y has shape {y.shape}, expected ({m},)")

    ynorm = float(np.linalg.norm(y))
    selected: list[int] = []
    coeffs = np.zeros(0)
    residual = y.copy()
    norms = [ynorm]
    states: list[PursuitState] = []
    max_corr = 0.0
    max_increase = -math.inf
    stop_reason = None
    iterations_run = 0

    for t, width in enumerate(widths, start=1):
        if np.linalg.norm(residual) <= ZERO_RESIDUAL_RTOL * ynorm:
            stop_reason = "zero_residual"
            break
        remaining = n - len(selected)
        if remaining == 0:
            stop_reason = "exhausted_atoms"
            break
        if width > remaining:
            # Fewer unselected atoms than the rule asks for: take what is
            # left, finish this projection, and stop.
            width = remaining
            stop_reason = "exhausted_atoms"

        # Strongest `width` correlations among unselected atoms; the stable
        # sort breaks ties toward the lower index, as top_k_indices does.
        scores = np.abs(mat.T @ residual)
        scores[selected] = -np.inf
        order = np.argsort(-scores, kind="stable")
        selected.extend(int(i) for i in order[:width])

        try:
            coeffs = least_squares(mat[:, selected], y)
        except SingularProjection as exc:
            raise SingularProjection(
                f"projection failed at iteration {t}: {exc}", iteration=t
            ) from exc
        residual = y - mat[:, selected] @ coeffs
        iterations_run = t

        norms.append(float(np.linalg.norm(residual)))
        max_increase = max(max_increase, norms[-1] - norms[-2])
        corr = float(np.max(np.abs(mat[:, selected].T @ residual)))
        max_corr = max(max_corr, corr / ynorm if ynorm > 0 else 0.0)

        if keep_states:
            order = np.argsort(selected)
            lam = np.asarray(selected)[order]
            states.append(PursuitState(
                t=t,
                lambda_t=lam,
                residual=residual.copy(),
                coeffs={int(i): float(c)
                        for i, c in zip(lam, np.asarray(coeffs)[order])},
                residual_norm_history=list(norms),
            ))
        if stop_reason is not None:
            break

    estimate = np.zeros(n)
    if selected:
        estimate[selected] = coeffs
    return PursuitResult(
        estimate=estimate,
        support=np.sort(np.asarray(selected, dtype=int)),
        states=states,
        iterations_run=iterations_run,
        stopped_early=stop_reason is not None,
        stop_reason=stop_reason,
        residual=residual,
        residual_norm_history=norms,
        max_selected_correlation=max_corr,
        max_residual_increase=max_increase,
    )


def omp(phi, y: np.ndarray, t: int, keep_states: bool = True) -> PursuitResult:
    """Orthogonal matching pursuit: t iterations, one atom per iteration.

    Stops early (as success) once the residual is exactly fitted.
    """
    mat = as_matrix(phi)
    if not 1 <= t <= mat.shape[0]:
        raise ValueError(f"iteration count t={t} out of range for {mat.shape}")
    return _run_pursuit(mat, y, [1] * t, keep_states)


def komp(
    phi, y: np.ndarray, t: int, k: int, keep_states: bool = True
) -> PursuitResult:
    """K-fold OMP: t iterations picking the k strongest new atoms each, with
    one final least-squares fit over all <= k*t selected columns.

    Raises UnstableWidth when k*t exceeds the number of measurements, since
    the final projection would be underdetermined. k=1 reproduces `omp`
    exactly.
    """
    mat = as_matrix(phi)
    if k < 1:
        raise ValueError("k must be >= 1")
    if t < 1:
        raise ValueError("t must be >= 1")
    if k * t > mat.shape[0]:
        raise UnstableWidth(
            f"k*t = {k * t} exceeds m = {mat.shape[0]} measurements"
        )
    return _run_pursuit(mat, y, [k] * t, keep_states)


def hybrid_omp(
    phi, y: np.ndarray, t: int, alpha: float, keep_states: bool = True
) -> PursuitResult:
    """Hybrid pursuit: iteration t picks max(1, ceil(alpha*(T - t + 1)))
    atoms, so the selection front-loads and tapers to single picks.

    Same instability guard as `komp`, applied to the total planned picks.
    """
    mat = as_matrix(phi)
    if t < 1:
        raise ValueError("t must be >= 1")
    widths = SelectionRule(kind="hybrid_alpha", alpha=alpha).widths(t)
    if sum(widths) > mat.shape[0]:
        raise UnstableWidth(
            f"planned selection of {sum(widths)} atoms exceeds "
            f"m = {mat.shape[0]} measurements"
        )
    return _run_pursuit(mat, y, widths, keep_states)


def truncate_result(result: PursuitResult, t: int) -> np.ndarray:
    """Best t-term truncation of a pursuit estimate (for comparing K-fold
    output against t-sparse competitors)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return best_t_term(result.estimate, min(t, result.estimate.size))
