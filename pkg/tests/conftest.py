import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_interior(rng, d, rmax=0.95):
    """Uniform direction, radius uniform in (0, rmax)."""
    g = rng.standard_normal(2 * d)
    v = g[:d] + 1j * g[d:]
    v /= np.linalg.norm(v)
    return v * rmax * rng.random()


def random_interior_batch(rng, count, d, rmax=0.95):
    g = rng.standard_normal((count, 2 * d))
    v = g[:, :d] + 1j * g[:, d:]
    v /= np.linalg.norm(v, axis=1)[:, None]
    return np.ascontiguousarray(v * (rmax * rng.random((count, 1))))
