"""The extremal construction: boundary maximizer, dual witness, unimodular
extremal functions, and the lower-bound values that converge to the sharp
semi-norm constant as the evaluation points approach the boundary.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import as_point
from .multiindex import alpha_matrix, monomial_vector
from .projection import BoundedFunction, NormSpec, holder_witness, vector_norm
from .quadrature import (IntegralResult, QuadratureRule, default_rule,
                         integrate_weighted)
from .special import KernelParams, deriv_factor, theoretical_norm

# Default schedule for the transformed route, whose mild integrand
# (exponent lam - n) stays integrable arbitrarily close to the boundary;
# the last point sits at the route's safety cap because the lower bound
# only clears 95% of its limit beyond eps = 0.99.
DEFAULT_EPSILONS = (0.5, 0.8, 0.9, 0.95, 0.99, 0.999)
# The direct route integrates the peaked kernel itself and refuses points
# past 0.95, so its default schedule stops there.
DIRECT_EPSILONS = (0.5, 0.8, 0.9, 0.95)

_DIRECT_EPS_MAX = 0.95
_TRANSFORMED_EPS_MAX = 0.999


@dataclass(frozen=True)
class ExtremalConfig:
    params: KernelParams
    norm: NormSpec
    zeta0: np.ndarray
    dual_witness: np.ndarray
    epsilons: tuple[float, ...]
    sharp_constant: float

    def __post_init__(self):
        z0 = as_point(self.zeta0)
        if abs(float(np.linalg.norm(z0)) - 1.0) > 1e-14:
            raise ValueError("zeta0 must lie on the unit sphere")
        w = np.asarray(self.dual_witness, dtype=np.complex128)
        if w.size != self.params.d_tilde:
            raise ValueError(
                f"dual witness has {w.size} components, expected {self.params.d_tilde}"
            )
        if self.norm.dual_available:
            qn = vector_norm(w, NormSpec(kind="p", p=self.norm.q))
            if abs(qn - 1.0) > 1e-12:
                raise ValueError(f"dual witness has dual norm {qn}, expected 1")
        pair = abs(complex(np.vdot(w, monomial_vector(z0, self.params.n))))
        if abs(pair - self.sharp_constant) > 1e-10:
            raise ValueError(
                f"witness pairing {pair} does not realize the constant "
                f"{self.sharp_constant}"
            )
        eps = tuple(float(e) for e in self.epsilons)
        if any(not 0.0 <= e < 1.0 for e in eps):
            raise ValueError("epsilons must lie in [0, 1)")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilons must be strictly increasing")
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "zeta0", z0)
        object.__setattr__(self, "dual_witness", w)


def select_zeta0(norm: NormSpec, d: int, n: int) -> np.ndarray:
    """Boundary direction maximizing the monomial-vector norm: the first
    coordinate vector for p >= 2, the balanced direction for p < 2, the
    numerical maximizer for custom norms."""
    if d == 1:
        return np.ones(1, dtype=np.complex128)
    if norm.kind == "p":
        if norm.p >= 2:
            z0 = np.zeros(d, dtype=np.complex128)
            z0[0] = 1.0
            return z0
        return np.full(d, d ** -0.5, dtype=np.complex128)
    from .constants import c_optimize

    return c_optimize(norm, d, n).maximizer


def dual_witness(zeta0, norm: NormSpec, n: int) -> np.ndarray:
    """Unit dual-norm vector pairing with the monomial vector at zeta0 to
    its full norm."""
    if not norm.dual_available:
        raise ValueError(
            "custom norms need an explicit dual witness (pass one to "
            "ExtremalConfig); only p-norms have a built-in dual"
        )
    return holder_witness(monomial_vector(as_point(zeta0), n), norm.p)


def make_config(params: KernelParams, norm: NormSpec,
                epsilons=DEFAULT_EPSILONS, witness=None) -> ExtremalConfig:
    zeta0 = select_zeta0(norm, params.d, params.n)
    if witness is None:
        witness = dual_witness(zeta0, norm, params.n)
    C = vector_norm(monomial_vector(zeta0, params.n), norm)
    return ExtremalConfig(params, norm, zeta0, np.asarray(witness),
                          tuple(epsilons), C)


# --------------------------------------------------------------------------
# extremal functions


def _g_values(config: ExtremalConfig, m_index: int, W: np.ndarray) -> np.ndarray:
    params = config.params
    zm = config.epsilons[m_index] * config.zeta0
    alphas = alpha_matrix(params.d, params.n)
    pair = kernels.pairing(W, alphas, np.conj(config.dual_witness))
    mod = np.abs(pair)
    phase = np.where(mod > 0, pair / np.where(mod == 0, 1.0, mod), 1.0 + 0j)
    e = params.lam + params.n
    ip = kernels.inner_zw(W, zm)
    return phase * kernels.abs1m_pow(ip, e) * kernels.cpow1m(np.conj(ip), -e)


def extremal_G(config: ExtremalConfig, m_index: int, w) -> complex:
    """The unimodular extremal function at one interior point: the phase
    of the witness pairing times a kernel phase factor. The phase is 1 by
    convention on the measure-zero set where the pairing vanishes."""
    wp = as_point(w)
    if float(np.linalg.norm(wp)) >= 1.0:
        raise ValueError("w must lie in the open ball")
    return complex(_g_values(config, m_index, wp[None, :])[0])


def extremal_evaluator(config: ExtremalConfig, m_index: int) -> BoundedFunction:
    eps = config.epsilons[m_index]
    return BoundedFunction(
        "extremal-Gm",
        lambda W: _g_values(config, m_index, W),
        f"extremal function at epsilon={eps:g}",
    )


# --------------------------------------------------------------------------
# lower bounds


def lower_bound_value(config: ExtremalConfig, m_index: int,
                      rule: QuadratureRule | None = None,
                      route: str = "transformed") -> IntegralResult:
    """(1-|z_m|^2)^n |<derivative tuple of the projected extremal function,
    conj(witness)>|, a lower bound for the semi-norm at z_m.

    route "direct" integrates |<Z(w), witness>| against the collapsed
    peaked kernel; route "transformed" moves the evaluation point into the
    integrand through the automorphism, leaving a mild kernel exponent.
    """
    params = config.params
    eps = config.epsilons[m_index]
    zm = eps * config.zeta0
    alphas = alpha_matrix(params.d, params.n)
    coeffs = np.conj(config.dual_witness)
    factor = deriv_factor(params)
    rule = rule or default_rule(params.d)

    if route == "direct":
        if eps > _DIRECT_EPS_MAX:
            raise ValueError(
                f"direct route supports epsilon <= {_DIRECT_EPS_MAX}, got {eps}"
            )
        e = params.lam + params.n

        def g(W):
            return np.abs(kernels.pairing(W, alphas, coeffs)) * \
                kernels.abs1m_pow(kernels.inner_zw(W, zm), -e)

        res = integrate_weighted(g, params, rule)
        scale = factor * (1.0 - eps ** 2) ** params.n
    elif route == "transformed":
        if eps > _TRANSFORMED_EPS_MAX:
            raise ValueError(
                f"transformed route supports epsilon <= {_TRANSFORMED_EPS_MAX}, "
                f"got {eps}"
            )
        e = params.lam - params.n

        def g(W):
            moved = kernels.mobius_batch(zm, W)
            return np.abs(kernels.pairing(moved, alphas, coeffs)) * \
                kernels.abs1m_pow(kernels.inner_zw(W, zm), -e)

        res = integrate_weighted(g, params, rule)
        scale = factor
    else:
        raise ValueError(f"unknown route {route!r}; use 'direct' or 'transformed'")

    return IntegralResult(scale * res.value.real, scale * res.error_estimate)


@dataclass(frozen=True)
class ConvergenceRow:
    epsilon: float
    value: float
    error_estimate: float
    ratio_to_theoretical: float


def _worker_count(n_tasks: int) -> int:
    cap = os.environ.get("BERGMAN_THREADS")
    limit = int(cap) if cap else 1
    return max(1, min(limit, n_tasks))


def convergence_table(config: ExtremalConfig,
                      rule: QuadratureRule | None = None,
                      route: str = "transformed") -> list[ConvergenceRow]:
    """One row per epsilon; the ratio column divides by the sharp constant
    value realized at the configured boundary direction."""
    target = theoretical_norm(config.params, config.sharp_constant)

    def row(m):
        res = lower_bound_value(config, m, rule, route)
        return ConvergenceRow(config.epsilons[m], res.value.real,
                              res.error_estimate, res.value.real / target)

    indices = range(len(config.epsilons))
    workers = _worker_count(len(config.epsilons))
    if workers == 1:
        return [row(m) for m in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, indices))
