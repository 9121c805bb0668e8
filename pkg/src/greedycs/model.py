"""Seed-deterministic signal and measurement-matrix generation plus the
truncation utilities built on top of them.

All generators are referentially transparent in (dimensions, seed): the
PRNG is numpy's PCG64 behind ``default_rng``, so the same seed always
reproduces the same bits. Vectors and matrices are plain float ndarrays;
the dataclasses below only carry generation metadata.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import top_k_indices

RNG_ALGORITHM = "numpy PCG64 (default_rng / SeedSequence)"

# Magnitude of the n-th largest entry of a decaying test signal, n >= 1.
DECAY_RATE = 0.9


@dataclass(frozen=True)
class MeasurementMatrix:
    """A dense sensing matrix together with how it was generated."""

    matrix: np.ndarray
    ensemble: str = "gaussian"
    seed: int | None = None
    column_normalized: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class NoiseSpec:
    """Additive measurement-noise description; sigma == 0 iff kind is none."""

    kind: str = "none"  # "none" | "gaussian"
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("none", "gaussian"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if (self.sigma == 0.0) != (self.kind == "none"):
            raise ValueError("sigma must be 0 exactly when kind is 'none'")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


NO_NOISE = NoiseSpec()


def as_matrix(phi) -> np.ndarray:
    """Accept either a MeasurementMatrix or a bare 2-D ndarray."""
    if isinstance(phi, MeasurementMatrix):
        return phi.matrix
    arr = np.asarray(phi, dtype=float)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D measurement matrix")
    return arr


def gen_gaussian_matrix(
    m: int, n: int, seed: int, column_normalized: bool = False
) -> MeasurementMatrix:
    """i.i.d. N(0, 1/m) matrix of shape (m, n), optionally with columns
    rescaled to unit l2 norm.

    Variance 1/m makes E||phi @ x||^2 = ||x||^2, the normalization under
    which isometry constants are meaningful. Warns (does not fail) when
    m >= n, since that is no longer a compressive regime.
    """
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be >= 1")
    if m >= n:
        warnings.warn(
            f"m={m} >= n={n}: matrix is not compressive", stacklevel=2
        )
    rng = np.random.default_rng(seed)
    mat = rng.normal(0.0, 1.0 / np.sqrt(m), size=(m, n))
    if column_normalized:
        mat = mat / np.linalg.norm(mat, axis=0)
    return MeasurementMatrix(
        matrix=mat, ensemble="gaussian", seed=seed,
        column_normalized=column_normalized,
    )


def gen_sparse_gaussian_signal(
    n: int, t: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """A t-sparse length-n signal with standard-normal nonzeros on a
    uniformly random support. Returns (signal, sorted support indices)."""
    if not 1 <= t <= n:
        raise ValueError(f"sparsity t={t} out of range for n={n}")
    rng = np.random.default_rng(seed)
    support = np.sort(rng.choice(n, size=t, replace=False))
    x = np.zeros(n)
    x[support] = rng.standard_normal(t)
    return x, support


def gen_decaying_signal(n: int, seed: int) -> np.ndarray:
    """Length-n signal whose sorted magnitudes are exactly 0.9^1 .. 0.9^n,
    with independent random signs at uniformly permuted positions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    mags = DECAY_RATE ** np.arange(1, n + 1)
    signs = rng.choice(np.array([-1.0, 1.0]), size=n)
    positions = rng.permutation(n)
    x = np.zeros(n)
    x[positions] = signs * mags
    return x


def best_t_term(x: np.ndarray, t: int) -> np.ndarray:
    """Best t-sparse approximation: keep the t largest-magnitude entries
    (ties toward the lower index), zero the rest."""
    x = np.asarray(x, dtype=float)
    if t < 0 or t > x.size:
        raise ValueError(f"t={t} out of range for length {x.size}")
    out = np.zeros_like(x)
    if t == 0:
        return out
    keep = top_k_indices(x, t)
    out[keep] = x[keep]
    return out


def top_k_norm(x: np.ndarray, k: int) -> float:
    """l2 norm of the k largest-magnitude entries of x."""
    x = np.asarray(x, dtype=float)
    if not 1 <= k <= x.size:
        raise ValueError(f"k={k} out of range for length {x.size}")
    mags = np.sort(np.abs(x))[::-1]
    return float(np.linalg.norm(mags[:k]))


def decay_tail_norm(n: int, t: int) -> float:
    """Optimal t-term approximation error of a decaying signal of length n.

    Equals sqrt(sum_{j=t+1..n} 0.9^(2j)); closed geometric form used so the
    benchmark reference curve is exact.
    """
    if t >= n:
        return 0.0
    q = DECAY_RATE ** 2
    return float(np.sqrt(q ** (t + 1) * (1.0 - q ** (n - t)) / (1.0 - q)))


def measure(phi, x: np.ndarray, noise: NoiseSpec = NO_NOISE) -> np.ndarray:
    """Observations y = phi @ x (+ i.i.d. N(0, sigma^2) noise per `noise`)."""
    mat = as_matrix(phi)
    x = np.asarray(x, dtype=float)
    if x.shape != (mat.shape[1],):
        raise ValueError(
            f"signal length {x.shape} does not match matrix {mat.shape}"
        )
    y = mat @ x
    if noise.kind == "gaussian":
        w = np.random.default_rng(noise.seed).normal(
            0.0, noise.sigma, size=mat.shape[0]
        )
        y = y + w
    return y
