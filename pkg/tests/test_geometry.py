import numpy as np
import pytest

from bergman import geometry, kernels
from bergman.quadrature import QuadratureRule, integrate_weighted
from bergman.special import KernelParams

from conftest import random_interior


def test_inner_examples():
    assert geometry.inner([1, 0], [1, 0]) == 1
    assert geometry.inner([1, 0], [0, 1]) == 0
    # hand expansion: 0.3*conj(0.1i) + 0.4i*conj(0.2) = -0.03i + 0.08i
    assert geometry.inner([0.3, 0.4j], [0.1j, 0.2]) == pytest.approx(0.05j)


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        geometry.inner([1, 0], [1, 0, 0])


def test_mobius_fixed_points(rng):
    for d in (1, 2, 3):
        z = random_interior(rng, d)
        np.testing.assert_allclose(geometry.mobius(z, np.zeros(d)), z, atol=1e-15)
        np.testing.assert_allclose(geometry.mobius(z, z), 0, atol=1e-14)


def test_mobius_one_dimensional_formula():
    got = geometry.mobius([0.5], [0.2j])[0]
    assert got == pytest.approx((0.5 - 0.2j) / (1 - 0.1j), rel=1e-15)


def test_mobius_at_zero_is_minus_identity():
    w = np.array([0.3, -0.2j])
    np.testing.assert_allclose(geometry.mobius(np.zeros(2), w), -w, atol=1e-16)


def test_mobius_rejects_exterior_z():
    with pytest.raises(ValueError):
        geometry.mobius([1.0], [0.0])


def test_involution_and_boundary(rng):
    for d in (1, 2, 3, 4):
        for _ in range(50):
            z = random_interior(rng, d)
            w = random_interior(rng, d)
            back = geometry.mobius(z, geometry.mobius(z, w))
            assert np.max(np.abs(back - w)) < 1e-12
            xi = w / np.linalg.norm(w)
            assert abs(np.linalg.norm(geometry.mobius(z, xi)) - 1.0) < 1e-12


def test_identity_residuals_at_zero():
    assert geometry.identity_residuals(np.zeros(2), [0.3, 0.1j]) == (0.0, 0.0)


def test_identity_residuals_at_omega_equals_z():
    r1, r2 = geometry.identity_residuals([0.3, 0.4j], [0.3, 0.4j])
    assert r1 < 1e-13 and r2 < 1e-13


def test_identity_residuals_randomized(rng):
    worst = 0.0
    for d in (1, 2, 3):
        for _ in range(1000):
            r1, r2 = geometry.identity_residuals(
                random_interior(rng, d), random_interior(rng, d))
            worst = max(worst, r1, r2)
    assert worst < 1e-12


def test_jacobian_trivial_cases():
    assert geometry.jacobian_real(np.zeros(2), [0.3, 0.2j]) == pytest.approx(1.0)
    assert geometry.jacobian_real([0.5], [0.0]) == pytest.approx(0.5625)


def test_jacobian_matches_finite_differences(rng):
    for d in (1, 2):
        for _ in range(25):
            z = random_interior(rng, d, rmax=0.8)
            w = random_interior(rng, d, rmax=0.8)
            exact = geometry.jacobian_real(z, w)
            fd = geometry.fd_jacobian_det(z, w)
            assert abs(fd - exact) / exact < 1e-6


def test_measure_transport(rng):
    """Pulling a test function back through the automorphism against the
    Jacobian-weighted measure reproduces the plain weighted integral."""
    for (d, sigma) in [(1, 0.0), (2, 0.5)]:
        params = KernelParams(d, sigma, 1)
        z = random_interior(rng, d, rmax=0.7)
        lam = params.lam

        def f(W):
            return np.exp(-np.einsum("ij,ij->i", np.abs(W), np.abs(W)))

        def pulled_back(W):
            moved = kernels.mobius_batch(z, W)
            jac_ratio = kernels.abs1m_pow(
                np.conj(kernels.inner_zw(W, z)), -2.0 * lam)
            return f(moved) * (1.0 - np.linalg.norm(z) ** 2) ** lam * jac_ratio

        plain = integrate_weighted(f, params)
        moved = integrate_weighted(pulled_back, params)
        tol = 3.0 * (plain.error_estimate + moved.error_estimate)
        assert abs(plain.value - moved.value) <= tol
