"""Pure-numpy node-level kernels.

Same contract as the compiled module `bergman._kernels`; the active
backend is chosen in `bergman.kernels`. All inputs are C-contiguous
arrays: W is (N, d) complex128 node rows, z a (d,) complex128 point.
"""

from __future__ import annotations

import numpy as np


def inner_zw(W, z):
    """<z, w_i> = sum_j z_j * conj(W[i, j]) for every node row."""
    return np.conj(W) @ np.ascontiguousarray(z)


def abs1m_pow(c, e):
    """|1 - c|**e elementwise."""
    return np.abs(1.0 - c) ** e


def cpow1m(c, e):
    """(1 - c)**e elementwise, principal branch."""
    return (1.0 - c) ** e


def mobius_batch(z, W):
    """Canonical ball automorphism exchanging 0 and z, applied to each row.

    Uses the rearrangement z*(1 - <w,z>/(1+s)) - s*w over 1 - <w,z> with
    s = sqrt(1-|z|^2), which is exact for all |z| < 1 including z = 0.
    """
    z = np.asarray(z, dtype=np.complex128)
    W = np.asarray(W, dtype=np.complex128)
    s = np.sqrt(1.0 - float(np.vdot(z, z).real))
    ip = W @ np.conj(z)
    num = z[None, :] * (1.0 - ip / (1.0 + s))[:, None] - s * W
    return num / (1.0 - ip)[:, None]


def pairing(W, alphas, coeffs):
    """sum_alpha coeffs[alpha] * w^alpha for every node row."""
    W = np.asarray(W, dtype=np.complex128)
    out = np.zeros(W.shape[0], dtype=np.complex128)
    for a, c in zip(np.asarray(alphas), np.asarray(coeffs)):
        if c == 0:
            continue
        term = np.ones(W.shape[0], dtype=np.complex128)
        for j, aj in enumerate(a):
            if aj:
                term = term * W[:, j] ** int(aj)
        out += c * term
    return out


def monomials(W, alphas):
    """Matrix of w^alpha values, shape (N, d_tilde), canonical order."""
    W = np.asarray(W, dtype=np.complex128)
    alphas = np.asarray(alphas)
    out = np.empty((W.shape[0], alphas.shape[0]), dtype=np.complex128)
    for i, a in enumerate(alphas):
        term = np.ones(W.shape[0], dtype=np.complex128)
        for j, aj in enumerate(a):
            if aj:
                term = term * W[:, j] ** int(aj)
        out[:, i] = term
    return out
