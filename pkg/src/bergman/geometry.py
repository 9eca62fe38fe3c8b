"""Points of the complex unit ball, its canonical automorphisms, and the
two algebraic identities they satisfy.

All functions are pure; points are plain one-dimensional complex arrays.
"""

from __future__ import annotations

import numpy as np

from . import kernels

_BOUNDARY_SLACK = 1e-12


def as_point(z) -> np.ndarray:
    p = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if p.ndim != 1 or p.size == 0:
        raise ValueError("a point is a nonempty one-dimensional complex vector")
    return p


def modulus(z) -> float:
    return float(np.linalg.norm(as_point(z)))


def inner(z, w) -> complex:
    """Hermitian inner product sum_j z_j * conj(w_j)."""
    z = as_point(z)
    w = as_point(w)
    if z.size != w.size:
        raise ValueError(f"dimension mismatch: {z.size} vs {w.size}")
    return complex(np.vdot(w, z))


def _require_interior(z: np.ndarray, name: str) -> None:
    m = float(np.linalg.norm(z))
    if m >= 1.0:
        raise ValueError(f"|{name}| = {m:.17g} but {name} must lie in the open ball")


def mobius(z, omega) -> np.ndarray:
    """The automorphism exchanging 0 and z, evaluated at omega.

    Interior z; omega may lie in the closed ball. Fixed canonical
    representative (no extra unitary factor); equals -omega when z = 0.
    """
    z = as_point(z)
    omega = as_point(omega)
    if z.size != omega.size:
        raise ValueError(f"dimension mismatch: {z.size} vs {omega.size}")
    _require_interior(z, "z")
    if float(np.linalg.norm(omega)) > 1.0 + _BOUNDARY_SLACK:
        raise ValueError("omega must lie in the closed ball")
    return kernels.mobius_batch(z, omega[None, :])[0]


def mobius_batch(z, W) -> np.ndarray:
    """mobius(z, w) applied to every row of W, shape (N, d)."""
    z = as_point(z)
    _require_interior(z, "z")
    return kernels.mobius_batch(z, np.asarray(W, dtype=np.complex128))


def jacobian_real(z, omega) -> float:
    """Real Jacobian determinant of the automorphism at omega,
    ((1-|z|^2)/|1-<omega,z>|^2)^(d+1)."""
    z = as_point(z)
    omega = as_point(omega)
    _require_interior(z, "z")
    _require_interior(omega, "omega")
    d = z.size
    ratio = (1.0 - modulus(z) ** 2) / abs(1.0 - inner(omega, z)) ** 2
    return float(ratio ** (d + 1))


def fd_jacobian_det(z, omega, h: float = 1e-6) -> float:
    """Diagnostic oracle: determinant of the real 2d x 2d derivative matrix
    of the automorphism at omega, by central finite differences."""
    z = as_point(z)
    omega = as_point(omega)
    _require_interior(z, "z")
    _require_interior(omega, "omega")
    d = z.size

    def to_real(p):
        return np.concatenate([p.real, p.imag])

    def from_real(x):
        return x[:d] + 1j * x[d:]

    x0 = to_real(omega)
    jac = np.empty((2 * d, 2 * d))
    for j in range(2 * d):
        e = np.zeros(2 * d)
        e[j] = h
        fp = kernels.mobius_batch(z, from_real(x0 + e)[None, :])[0]
        fm = kernels.mobius_batch(z, from_real(x0 - e)[None, :])[0]
        jac[:, j] = to_real((fp - fm) / (2.0 * h))
    return float(abs(np.linalg.det(jac)))


def identity_residuals(z, omega) -> tuple[float, float]:
    """Absolute residuals of the two automorphism identities:
    1-|phi_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1-<w,z>|^2 and
    (1-<w,z>)(1-<phi_z(w),z>) = 1-|z|^2."""
    z = as_point(z)
    omega = as_point(omega)
    _require_interior(z, "z")
    _require_interior(omega, "omega")
    phi = mobius(z, omega)
    one_minus_zz = 1.0 - modulus(z) ** 2
    i_oz = inner(omega, z)
    lhs1 = 1.0 - float(np.linalg.norm(phi)) ** 2
    rhs1 = one_minus_zz * (1.0 - modulus(omega) ** 2) / abs(1.0 - i_oz) ** 2
    res1 = abs(lhs1 - rhs1)
    res2 = abs((1.0 - i_oz) * (1.0 - inner(phi, z)) - one_minus_zz)
    return float(res1), float(res2)
