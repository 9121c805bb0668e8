"""Dense linear-algebra kernels: column-subset least squares, extreme Gram
eigenvalues, and deterministic top-magnitude index selection.

Everything here is a pure function of its inputs and safe to call
concurrently on shared read-only arrays.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import SingularProjection

# Relative rank tolerance for the QR factor diagonal.
RANK_RTOL = 1e-10


def least_squares(a: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coefficients c minimizing ||a @ c - y||_2 for a tall full-rank matrix.

    Solved through a QR factorization (never by forming the normal
    equations), so the residual y - a @ c is orthogonal to every column of
    `a` up to roundoff.

    Raises SingularProjection when `a` has more columns than rows or when
    the smallest |R_ii| falls below RANK_RTOL times the largest, which
    signals an unstable atom set.
    """
    a = np.asarray(a, dtype=float)
    y = np.asarray(y, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    m, k = a.shape
    if y.shape != (m,):
        raise ValueError(f"y has shape {y.shape}, expected ({m},)")
    if k > m:
        raise SingularProjection(
            f"{k} columns exceed {m} rows: projection is underdetermined"
        )
    q, r = scipy.linalg.qr(a, mode="economic")
    diag = np.abs(np.diag(r))
    if diag.min() <= RANK_RTOL * diag.max():
        raise SingularProjection(
            f"rank tolerance failed: min|R_ii|/max|R_ii| = "
            f"{diag.min() / diag.max():.3e}"
        )
    return scipy.linalg.solve_triangular(r, q.T @ y)


def gram_extreme_eigenvalues(a: np.ndarray) -> tuple[float, float]:
    """Smallest and largest eigenvalues of a.T @ a.

    The Gram matrix is positive semi-definite, so an eigenvalue that comes
    out within 1e-12 below zero is roundoff and gets clamped to 0.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[1] < 1:
        raise ValueError("expected a matrix with at least one column")
    gram = a.T @ a
    w = np.linalg.eigvalsh(gram)
    lo, hi = float(w[0]), float(w[-1])
    if -1e-12 <= lo < 0.0:
        lo = 0.0
    return lo, hi


def top_k_indices(v: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest-magnitude entries, magnitude-descending.

    Ties break toward the lower index, so the result is deterministic.
    """
    v = np.asarray(v, dtype=float)
    if not 1 <= k <= v.size:
        raise ValueError(f"k={k} out of range for vector of length {v.size}")
    # Stable sort keeps the original (ascending-index) order of equal keys.
    order = np.argsort(-np.abs(v), kind="stable")
    return order[:k]
