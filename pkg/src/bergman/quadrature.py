"""Numerical integration over the unit ball of C^d.

Two schemes:

* "product": radial Gauss-Jacobi nodes (placed for the weight
  (1-r^2)^t so singular weights never blow up at a node) times a sphere
  grid. Supported for d in {1, 2}. d = 1 uses a uniform angular grid;
  d = 2 uses Gauss-Legendre x trapezoid x trapezoid in torus coordinates
  of the 3-sphere. The error estimate is the difference against the
  half-resolution rule plus a small roundoff floor.
* "monte-carlo": any d >= 1. The radius is drawn from the exact radial
  law of the weighted measure (a Beta law in r^2, via the inverse
  regularized incomplete beta), the direction from normalized Gaussians.
  Randomness is counter-based: sample i consumes a fixed block of the
  Philox stream derived from (seed, i), so chunking or partitioning the
  samples never changes the values. The error estimate is the standard
  error of the sample mean.

Integrands are vectorized callables: they receive an (N, d) complex
array of node rows and return an (N,) array (or (N, k) for the
vector-valued helper).

Rule parameters are also settable from a JSON block (CLI --quad-config):

    {"scheme": "product" | "monte-carlo", "radial_nodes": int,
     "sphere_nodes": int | [int, int, int], "samples": int,
     "seed": int, "jacobi_exponent": float}
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import betaincinv, ndtri, roots_jacobi

from . import kernels
from .geometry import as_point
from .special import KernelParams, c_sigma

_MC_CHUNK = 1 << 18
_PEAK_RADIUS = 0.999


class IntegrationError(RuntimeError):
    """An integrand sample came back non-finite."""


@dataclass(frozen=True)
class QuadratureRule:
    scheme: str = "product"
    radial_nodes: int = 128
    sphere_nodes: int | tuple[int, int, int] = 256
    samples: int = 2_000_000
    seed: int = 0
    jacobi_exponent: float = 0.0

    def __post_init__(self):
        if self.scheme not in ("product", "monte-carlo"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.radial_nodes < 1 or self.samples < 1:
            raise ValueError("node and sample counts must be positive")
        if not self.jacobi_exponent > -1:
            raise ValueError(
                f"jacobi_exponent must exceed -1, got {self.jacobi_exponent}"
            )


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    error_estimate: float


def default_rule(d: int) -> QuadratureRule:
    if d == 1:
        return QuadratureRule("product", radial_nodes=128, sphere_nodes=256)
    if d == 2:
        return QuadratureRule("product", radial_nodes=64, sphere_nodes=32)
    return QuadratureRule("monte-carlo")


def rule_from_dict(block: dict, d: int) -> QuadratureRule:
    """Build a rule from a JSON-style dict, filling gaps with defaults."""
    base = default_rule(d)
    known = {"scheme", "radial_nodes", "sphere_nodes", "samples", "seed",
             "jacobi_exponent"}
    bad = set(block) - known
    if bad:
        raise ValueError(f"unknown quadrature keys {sorted(bad)}")
    fields = dict(block)
    if "sphere_nodes" in fields and isinstance(fields["sphere_nodes"], list):
        fields["sphere_nodes"] = tuple(fields["sphere_nodes"])
    return replace(base, **fields)


# --------------------------------------------------------------------------
# node construction

_RADIAL_CACHE: dict = {}
_SPHERE_CACHE: dict = {}


def _radial_rule(d: int, t: float, m: int):
    """Nodes r_i and weights u_i with
    sum_i u_i g(r_i) ~ 2d * int_0^1 r^(2d-1) (1-r^2)^t g(r) dr."""
    key = (d, float(t), int(m))
    if key not in _RADIAL_CACHE:
        x, w = roots_jacobi(m, t, d - 1)
        r = np.sqrt((x + 1.0) / 2.0)
        _RADIAL_CACHE[key] = (r, d * 2.0 ** (-(d + t)) * w)
    return _RADIAL_CACHE[key]


def _sphere_shape(d: int, sphere_nodes) -> tuple:
    if d == 1:
        s = sphere_nodes if isinstance(sphere_nodes, int) else sphere_nodes[0]
        if s < 4:
            raise ValueError("need at least 4 angular nodes")
        return (int(s),)
    if d == 2:
        if isinstance(sphere_nodes, int):
            shape = (sphere_nodes,) * 3
        else:
            shape = tuple(int(s) for s in sphere_nodes)
        if len(shape) != 3 or min(shape) < 2:
            raise ValueError(
                "d=2 sphere grid needs three counts >= 2 (mu, theta1, theta2)"
            )
        return shape
    raise ValueError(f"product rule supports d in {{1, 2}}, got d={d}")


def _sphere_grid(d: int, sphere_nodes):
    """Unit directions and weights whose weighted sum is the sphere mean."""
    shape = _sphere_shape(d, sphere_nodes)
    key = (d, shape)
    if key in _SPHERE_CACHE:
        return _SPHERE_CACHE[key]
    if d == 1:
        (s,) = shape
        theta = 2.0 * np.pi * np.arange(s) / s
        dirs = np.exp(1j * theta)[:, None]
        wts = np.full(s, 1.0 / s)
    else:
        sm, s1, s2 = shape
        x, wg = leggauss(sm)
        mu = (x + 1.0) / 2.0
        wmu = wg / 2.0
        cos_eta = np.sqrt(1.0 - mu)
        sin_eta = np.sqrt(mu)
        t1 = np.exp(2j * np.pi * np.arange(s1) / s1)
        t2 = np.exp(2j * np.pi * np.arange(s2) / s2)
        dirs = np.empty((sm, s1, s2, 2), dtype=np.complex128)
        dirs[..., 0] = cos_eta[:, None, None] * t1[None, :, None]
        dirs[..., 1] = sin_eta[:, None, None] * t2[None, None, :]
        wts = np.broadcast_to(
            wmu[:, None, None] / (s1 * s2), (sm, s1, s2)
        ).reshape(-1).copy()
        dirs = dirs.reshape(-1, 2)
    dirs.setflags(write=False)
    wts.setflags(write=False)
    _SPHERE_CACHE[key] = (dirs, wts)
    return dirs, wts


def _check_finite(vals: np.ndarray, nodes: np.ndarray) -> None:
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = int(np.argwhere(bad)[0][0] if vals.ndim == 1
                  else np.argwhere(bad.any(axis=1))[0][0])
        raise IntegrationError(
            f"non-finite integrand value at node {nodes[idx].tolist()}"
        )


# --------------------------------------------------------------------------
# product rule

def _product_raw(g: Callable, d: int, t: float, radial_nodes: int,
                 sphere_nodes):
    """sum ~ int (1-|w|^2)^t g(w) dv(w); g may be vector-valued."""
    r, wr = _radial_rule(d, t, radial_nodes)
    dirs, ws = _sphere_grid(d, sphere_nodes)
    total = None
    for ri, wi in zip(r, wr):
        nodes = ri * dirs
        vals = np.asarray(g(nodes))
        _check_finite(vals, nodes)
        mean = np.tensordot(ws, vals, axes=(0, 0))
        total = wi * mean if total is None else total + wi * mean
    return total


def _half_sphere(d: int, sphere_nodes):
    shape = _sphere_shape(d, sphere_nodes)
    if d == 1:
        return max(shape[0] // 2, 4)
    return tuple(max(s // 2, 2) for s in shape)


def _product_integral(g: Callable, d: int, t: float, rule: QuadratureRule):
    full = _product_raw(g, d, t, rule.radial_nodes, rule.sphere_nodes)
    half = _product_raw(g, d, t, max(rule.radial_nodes // 2, 2),
                        _half_sphere(d, rule.sphere_nodes))
    err = np.abs(full - half) + 1e-14 * (1.0 + np.abs(full))
    return full, err


# --------------------------------------------------------------------------
# monte carlo

def _mc_uniforms(seed: int, start: int, count: int, draws: int) -> np.ndarray:
    """Uniform block for samples [start, start+count). Sample i occupies a
    fixed window of the Philox stream, so any partitioning of the sample
    range yields identical draws. The per-sample stride is padded to whole
    Philox blocks (4 outputs) because `advance` steps the block counter."""
    stride = 4 * ((draws + 3) // 4)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start * (stride // 4))
    u = np.random.Generator(bitgen).random((count, stride))
    return u[:, :draws]


def _mc_raw(g: Callable, d: int, t: float, samples: int, seed: int):
    """(mean, standard error) of g under the weight-t probability measure."""
    draws = 2 * d + 1
    s1 = None
    s2_re = None
    s2_im = None
    for start in range(0, samples, _MC_CHUNK):
        m = min(_MC_CHUNK, samples - start)
        u = _mc_uniforms(seed, start, m, draws)
        rad = np.sqrt(betaincinv(d, t + 1.0, u[:, 0]))
        gauss = ndtri(np.clip(u[:, 1:], 1e-16, 1.0 - 1e-16))
        dirv = gauss[:, :d] + 1j * gauss[:, d:]
        dirv /= np.linalg.norm(dirv, axis=1)[:, None]
        nodes = rad[:, None] * dirv
        vals = np.asarray(g(nodes))
        _check_finite(vals, nodes)
        if s1 is None:
            s1 = vals.sum(axis=0)
            s2_re = (vals.real ** 2).sum(axis=0)
            s2_im = (vals.imag ** 2).sum(axis=0)
        else:
            s1 = s1 + vals.sum(axis=0)
            s2_re = s2_re + (vals.real ** 2).sum(axis=0)
            s2_im = s2_im + (vals.imag ** 2).sum(axis=0)
    mean = s1 / samples
    var = (s2_re / samples - mean.real ** 2) + (s2_im / samples - mean.imag ** 2)
    se = np.sqrt(np.maximum(var, 0.0) / samples)
    return mean, se


# --------------------------------------------------------------------------
# public operations

def integrate_ball(f: Callable, d: int, rule: QuadratureRule | None = None
                   ) -> IntegralResult:
    """Approximate int_B f dv with the measure normalized to v(B) = 1.

    With the default jacobi_exponent = 0 the product rule integrates
    radial polynomials (in particular constants) exactly. A nonzero
    jacobi_exponent t places the radial nodes for integrands carrying a
    (1-|w|^2)^t factor.
    """
    rule = rule or default_rule(d)
    t = rule.jacobi_exponent
    if t == 0.0:
        g = f
    else:
        def g(W):
            return np.asarray(f(W)) * (1.0 - _abs_sq(W)) ** (-t)
    if rule.scheme == "product":
        value, err = _product_integral(g, d, t, rule)
        return IntegralResult(complex(value), float(err))
    mean, se = _mc_raw(g, d, t, rule.samples, rule.seed)
    ct = c_sigma(d, t)
    return IntegralResult(complex(mean / ct), float(se / ct))


def integrate_weighted(f: Callable, params: KernelParams,
                       rule: QuadratureRule | None = None) -> IntegralResult:
    """Approximate int_B f dv_sigma (weighted measure of total mass 1)."""
    value, err = _weighted_core(f, params, rule)
    return IntegralResult(complex(value), float(err))


def integrate_weighted_many(f: Callable, params: KernelParams,
                            rule: QuadratureRule | None = None):
    """Vector-valued version: f returns (N, k); gives (values, errors)."""
    value, err = _weighted_core(f, params, rule)
    return np.atleast_1d(value), np.atleast_1d(err)


def _weighted_core(f, params, rule):
    d, sigma = params.d, params.sigma
    rule = rule or default_rule(d)
    if rule.scheme == "product":
        raw, err = _product_integral(f, d, sigma, rule)
        cs = params.c_sigma
        return cs * raw, cs * err
    return _mc_raw(f, d, sigma, rule.samples, rule.seed)


def j_numeric(c: float, t: float, z, rule: QuadratureRule | None = None
              ) -> IntegralResult:
    """The parametric integral
    J_{c,t}(z) = int (1-|w|^2)^t |1-<z,w>|^(-(d+1+t+c)) dv(w)."""
    if not t > -1:
        raise ValueError(f"require t > -1, got {t}")
    zp = as_point(z)
    d = zp.size
    r = float(np.linalg.norm(zp))
    if r >= 1.0:
        raise ValueError(f"|z| = {r:.17g} but z must lie in the open ball")
    if r > _PEAK_RADIUS:
        warnings.warn(
            f"|z| = {r:.6f} > {_PEAK_RADIUS}: integrand peaking exceeds the "
            "rule's resolution contract", stacklevel=2,
        )
    rule = rule or default_rule(d)
    e = d + 1 + t + c

    def g(W):
        return kernels.abs1m_pow(kernels.inner_zw(W, zp), -e)

    if rule.scheme == "product":
        value, err = _product_integral(g, d, t, rule)
        return IntegralResult(complex(value), float(err))
    mean, se = _mc_raw(g, d, t, rule.samples, rule.seed)
    ct = c_sigma(d, t)
    return IntegralResult(complex(mean / ct), float(se / ct))


def _abs_sq(W: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", W.real, W.real) + np.einsum(
        "ij,ij->i", W.imag, W.imag
    )
