import numpy as np
import pytest


def unit_norm_tight_frame(m: int, n: int, seed: int, iters: int = 200) -> np.ndarray:
    """Near-optimal m x n sensing design: alternating projections between
    the tight frames (rows orthogonal, norm sqrt(n/m)) and the unit-norm
    column manifold. For n close to m these have far smaller isometry
    constants than random designs, which the certificate tests need."""
    rng = np.random.default_rng(seed)
    phi = rng.standard_normal((m, n))
    for _ in range(iters):
        u, _, vt = np.linalg.svd(phi, full_matrices=False)
        phi = np.sqrt(n / m) * (u @ vt)
        phi = phi / np.linalg.norm(phi, axis=0)
    return phi


@pytest.fixture(scope="session")
def frame_10x12():
    return unit_norm_tight_frame(10, 12, seed=0)


@pytest.fixture(scope="session")
def frame_12x13():
    return unit_norm_tight_frame(12, 13, seed=0)
