"""Comparison algorithms: CoSaMP (merge / solve / prune, at either the
standard 2T or the narrower T selection width) and iterative hard
thresholding with a fixed, documented step policy.

Both return the same PursuitResult record as the pursuit family so the
benchmark can treat every algorithm uniformly. Note that CoSaMP's pruning
step and IHT's gradient step do not preserve the pursuit-family residual
monotonicity / orthogonality invariants; their histories are recorded but
not expected to be monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Diverged, SingularProjection
from .linalg import least_squares, top_k_indices
from .model import as_matrix, best_t_term
from .pursuit import PursuitResult, PursuitState, ZERO_RESIDUAL_RTOL

COSAMP_DEFAULT_ITERATIONS = 10
IHT_DEFAULT_ITERATIONS = 300
IHT_CONVERGENCE_RTOL = 1e-8
IHT_DIVERGENCE_FACTOR = 10.0


@dataclass(frozen=True)
class BaselineConfig:
    """Knobs for the baselines.

    width_factor applies to CoSaMP only: the proxy stage keeps
    width_factor * T candidate atoms (2 is the standard rule, 1 the
    narrow variant). The IHT step is either "normalized" (adaptive
    support-restricted step with the usual acceptance safeguard; the
    default, matching how production hard-thresholding routines pick the
    step) or "fixed" (step_size times the gradient on the spectrally
    rescaled matrix, a conservative always-contracting fallback).
    """

    algorithm: str = "cosamp"       # "cosamp" | "iht"
    width_factor: int = 2
    iterations: int | None = None
    step_policy: str = "normalized"  # "normalized" | "fixed"
    step_size: float = 1.0

    def __post_init__(self):
        if self.algorithm not in ("cosamp", "iht"):
            raise ValueError(f"unknown baseline {self.algorithm!r}")
        if self.width_factor < 1:
            raise ValueError("width_factor must be >= 1")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.step_policy not in ("normalized", "fixed"):
            raise ValueError(f"unknown step policy {self.step_policy!r}")
        if self.step_size <= 0:
            raise ValueError("step_size must be > 0")


def cosamp(
    phi, y: np.ndarray, t: int, cfg: BaselineConfig | None = None,
    keep_states: bool = True,
) -> PursuitResult:
    """CoSaMP: per iteration form the proxy phi' r, merge the top
    width_factor*t proxy atoms with the current support, least-squares on
    the merged set, prune to the best t, recompute the residual.

    Runs a fixed iteration budget (default 10) with the usual zero-residual
    early stop. A merged support larger than the measurement count makes
    the projection underdetermined and surfaces as SingularProjection with
    the offending iteration attached.
    """
    cfg = cfg or BaselineConfig(algorithm="cosamp")
    iterations = cfg.iterations or COSAMP_DEFAULT_ITERATIONS
    mat = as_matrix(phi)
    m, n = mat.shape
    y = np.asarray(y, dtype=float)
    ynorm = float(np.linalg.norm(y))

    x = np.zeros(n)
    residual = y.copy()
    norms = [ynorm]
    states: list[PursuitState] = []
    stop_reason = None
    iterations_run = 0

    for it in range(1, iterations + 1):
        if np.linalg.norm(residual) <= ZERO_RESIDUAL_RTOL * ynorm:
            stop_reason = "zero_residual"
            break
        proxy = np.abs(mat.T @ residual)
        width = min(cfg.width_factor * t, n)
        candidates = top_k_indices(proxy, width)
        merged = np.union1d(np.flatnonzero(x), candidates)
        try:
            coeffs = least_squares(mat[:, merged], y)
        except SingularProjection as exc:
            raise SingularProjection(
                f"projection failed at iteration {it}: {exc}", iteration=it
            ) from exc
        full = np.zeros(n)
        full[merged] = coeffs
        x = best_t_term(full, t)
        residual = y - mat @ x
        iterations_run = it
        norms.append(float(np.linalg.norm(residual)))
        if keep_states:
            support = np.flatnonzero(x)
            states.append(PursuitState(
                t=it,
                lambda_t=support,
                residual=residual.copy(),
                coeffs={int(i): float(x[i]) for i in support},
                residual_norm_history=list(norms),
            ))

    return PursuitResult(
        estimate=x,
        support=np.flatnonzero(x),
        states=states,
        iterations_run=iterations_run,
        stopped_early=stop_reason is not None,
        stop_reason=stop_reason,
        residual=residual,
        residual_norm_history=norms,
    )


def _spectral_norm_estimate(mat: np.ndarray, power_iterations: int = 50) -> float:
    """Largest singular value via power iteration on mat' mat, started from
    the deterministic all-ones direction."""
    v = np.ones(mat.shape[1]) / math.sqrt(mat.shape[1])
    for _ in range(power_iterations):
        w = mat.T @ (mat @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
    return float(np.sqrt(v @ (mat.T @ (mat @ v))))


def _normalized_step(
    mat: np.ndarray, x: np.ndarray, grad: np.ndarray,
    support: np.ndarray, t: int,
) -> np.ndarray:
    """One adaptive hard-thresholding step.

    The step length is optimal for the gradient restricted to the current
    support; if thresholding then moves the support, the usual acceptance
    test mu <= 0.99 ||dx||^2 / ||phi dx||^2 is enforced by halving mu.
    """
    gs = grad[support]
    denom = float(np.linalg.norm(mat[:, support] @ gs) ** 2)
    mu = float(gs @ gs) / denom if denom > 0 else 1.0
    for _ in range(100):
        x_next = best_t_term(x + mu * grad, t)
        if np.array_equal(np.flatnonzero(x_next), support):
            return x_next
        dx = x_next - x
        fit = float(np.linalg.norm(mat @ dx) ** 2)
        if fit == 0.0 or mu <= 0.99 * float(dx @ dx) / fit:
            return x_next
        mu /= 2.0
    return best_t_term(x + mu * grad, t)


def iht(
    phi, y: np.ndarray, t: int, cfg: BaselineConfig | None = None,
    keep_states: bool = True,
) -> PursuitResult:
    """Iterative hard thresholding: x <- keep_t(x + mu * phi'(y - phi x)).

    The default "normalized" policy picks mu adaptively per iteration (the
    optimal step for the support-restricted gradient, with the standard
    acceptance safeguard when the support moves). The "fixed" policy runs
    mu = step_size on the matrix rescaled so its spectral norm is <= 1
    (a 50-step power-iteration estimate padded by 0.1%), which always
    contracts but converges slowly.

    Stops at the iteration budget (default 300) or when the iterate moves
    by less than 1e-8 relative. Raises Diverged if the measurement residual
    ever exceeds 10x ||y||.
    """
    cfg = cfg or BaselineConfig(algorithm="iht")
    iterations = cfg.iterations or IHT_DEFAULT_ITERATIONS
    mat = as_matrix(phi)
    m, n = mat.shape
    y = np.asarray(y, dtype=float)
    ynorm = float(np.linalg.norm(y))

    if cfg.step_policy == "fixed":
        scale = _spectral_norm_estimate(mat) * 1.001
        step_mat = mat / scale if scale > 0 else mat
        y_step = y / scale if scale > 0 else y
    else:
        step_mat = mat
        y_step = y

    x = np.zeros(n)
    support = np.flatnonzero(best_t_term(mat.T @ y, t))
    residual = y.copy()
    norms = [ynorm]
    states: list[PursuitState] = []
    stop_reason = None
    iterations_run = 0

    for it in range(1, iterations + 1):
        if np.linalg.norm(residual) <= ZERO_RESIDUAL_RTOL * ynorm:
            stop_reason = "zero_residual"
            break
        grad = step_mat.T @ (y_step - step_mat @ x)
        if cfg.step_policy == "fixed":
            x_next = best_t_term(x + cfg.step_size * grad, t)
        else:
            x_next = _normalized_step(mat, x, grad, support, t)
        residual = y - mat @ x_next
        iterations_run = it
        norms.append(float(np.linalg.norm(residual)))
        if norms[-1] > IHT_DIVERGENCE_FACTOR * ynorm:
            raise Diverged(
                f"residual {norms[-1]:.3e} exceeds {IHT_DIVERGENCE_FACTOR}x "
                f"||y|| at iteration {it}: step size too large"
            )
        step = float(np.linalg.norm(x_next - x))
        x = x_next
        support = np.flatnonzero(x)
        if keep_states:
            states.append(PursuitState(
                t=it,
                lambda_t=support,
                residual=residual.copy(),
                coeffs={int(i): float(x[i]) for i in support},
                residual_norm_history=list(norms),
            ))
        if step < IHT_CONVERGENCE_RTOL * max(float(np.linalg.norm(x)), 1e-300):
            stop_reason = "converged"
            break

    return PursuitResult(
        estimate=x,
        support=np.flatnonzero(x),
        states=states,
        iterations_run=iterations_run,
        stopped_early=stop_reason is not None,
        stop_reason=stop_reason,
        residual=residual,
        residual_norm_history=norms,
    )
