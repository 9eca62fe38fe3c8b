"""The weighted projection operator, its differentiated kernel, derivative
tuples, norms on the tuple space, and semi-norm probes over bounded test
functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .geometry import as_point, inner, modulus
from .multiindex import MultiIndex, alpha_matrix
from .quadrature import (IntegralResult, QuadratureRule, integrate_weighted,
                         integrate_weighted_many)
from .special import KernelParams, deriv_factor

# --------------------------------------------------------------------------
# norms on the derivative-tuple space


@dataclass(frozen=True)
class NormSpec:
    """A conjugation-invariant norm on the tuple space.

    kind "p" is the p-norm (p in [1, inf], explicit dual exponent);
    kind "custom" wraps a user evaluator and has no dual witness, which
    restricts it to the upper-bound machinery.
    """

    kind: str = "p"
    p: float = 2.0
    evaluator: Callable | None = None

    def __post_init__(self):
        if self.kind == "p":
            if not self.p >= 1:
                raise ValueError(f"p-norms need p >= 1, got {self.p}")
        elif self.kind == "custom":
            if self.evaluator is None:
                raise ValueError("custom norms need an evaluator")
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @property
    def dual_available(self) -> bool:
        return self.kind == "p"

    @property
    def q(self) -> float:
        """Dual exponent p/(p-1)."""
        if self.kind != "p":
            raise ValueError("custom norms have no dual exponent")
        if self.p == 1:
            return math.inf
        if self.p == math.inf:
            return 1.0
        return self.p / (self.p - 1.0)

    def label(self) -> str:
        if self.kind == "p":
            return "inf" if self.p == math.inf else f"{self.p:g}"
        return "custom"


def p_norm(p: float) -> NormSpec:
    return NormSpec(kind="p", p=float(p))


def custom_norm(evaluator: Callable) -> NormSpec:
    return NormSpec(kind="custom", evaluator=evaluator)


def vector_norm(Z, norm: NormSpec) -> float:
    """Norm of a tuple-space vector."""
    Z = np.atleast_1d(np.asarray(Z, dtype=np.complex128))
    if norm.kind == "custom":
        return float(norm.evaluator(Z))
    if norm.p == math.inf:
        return float(np.max(np.abs(Z)))
    return float(np.sum(np.abs(Z) ** norm.p) ** (1.0 / norm.p))


def _phase(c: complex) -> complex:
    a = abs(c)
    return c / a if a > 0 else 1.0 + 0j


def holder_witness(Z, p: float) -> np.ndarray:
    """A dual-norm-one witness W with <Z, W> = |Z|_p (Hoelder equality).

    The pairing is sum_k Z_k conj(W_k): for p in (1, inf) the witness
    has components phase(Z_k)|Z_k|^(p-1)/|Z|_p^(p-1); for p = 1 it is
    the full phase vector (sup-norm one); for p = inf the phase-carrying
    indicator of a maximal component (1-norm one).
    """
    Z = np.atleast_1d(np.asarray(Z, dtype=np.complex128))
    mods = np.abs(Z)
    phases = np.where(mods > 0, Z / np.where(mods == 0, 1.0, mods), 1.0 + 0j)
    if p == 1:
        return phases.astype(np.complex128)
    if p == math.inf:
        W = np.zeros_like(Z)
        k = int(np.argmax(mods))
        W[k] = _phase(Z[k])
        return W
    total = float(np.sum(mods ** p) ** (1.0 / p))
    if total == 0.0:
        W = np.zeros_like(Z)
        W[0] = 1.0
        return W
    return phases * (mods / total) ** (p - 1.0)


# --------------------------------------------------------------------------
# kernel and derivative machinery


def kernel(params: KernelParams, z, w) -> complex:
    """(1-|w|^2)^sigma / (1-<z,w>)^(d+1+sigma), principal branch."""
    z = as_point(z)
    w = as_point(w)
    base = 1.0 - inner(z, w)
    # interior points keep the base in the right half-plane; the principal
    # branch is then never crossed
    assert base.real > 0.0
    return (1.0 - modulus(w) ** 2) ** params.sigma * base ** (-params.lam)


def kernel_derivative(alpha: MultiIndex, params: KernelParams, z, w) -> complex:
    """Mixed z-derivative of order alpha of the kernel:
    Gamma(lam+n)/Gamma(lam) (1-|w|^2)^sigma (1-<z,w>)^(-(lam+n)) conj(w)^alpha."""
    if alpha.order != params.n:
        raise ValueError(f"|alpha| = {alpha.order} but params.n = {params.n}")
    z = as_point(z)
    w = as_point(w)
    base = 1.0 - inner(z, w)
    assert base.real > 0.0
    mono = complex(np.prod(np.conj(w) ** np.array(alpha.entries)))
    return (
        deriv_factor(params)
        * (1.0 - modulus(w) ** 2) ** params.sigma
        * base ** (-(params.lam + params.n))
        * mono
    )


def _as_evaluator(G) -> Callable:
    return G.evaluator if hasattr(G, "evaluator") else G


def apply_T(G, params: KernelParams, z,
            rule: QuadratureRule | None = None) -> IntegralResult:
    """The projection c_sigma int K_sigma(z, .) G dv at the point z."""
    zp = as_point(z)
    geval = _as_evaluator(G)
    lam = params.lam

    def g(W):
        return np.asarray(geval(W)) * kernels.cpow1m(
            kernels.inner_zw(W, zp), -lam
        )

    return integrate_weighted(g, params, rule)


def derivative_tuple(G, params: KernelParams, z,
                     rule: QuadratureRule | None = None):
    """All order-n derivatives of the projection of G at z, canonical
    order; returns (values, error_estimates)."""
    zp = as_point(z)
    geval = _as_evaluator(G)
    alphas = alpha_matrix(params.d, params.n)
    lam_n = params.lam + params.n

    def g(W):
        base = np.asarray(geval(W)) * kernels.cpow1m(
            kernels.inner_zw(W, zp), -lam_n
        )
        return kernels.monomials(np.conj(W), alphas) * base[:, None]

    values, errors = integrate_weighted_many(g, params, rule)
    factor = deriv_factor(params)
    return factor * values, factor * errors


def bloch_seminorm_estimate(G, params: KernelParams, norm: NormSpec,
                            z_samples, rule: QuadratureRule | None = None
                            ) -> float:
    """max over the probe points of (1-|z|^2)^n |derivative tuple|;
    a lower bound for the semi-norm of the projection of G."""
    best = 0.0
    for z in z_samples:
        zp = as_point(z)
        values, _ = derivative_tuple(G, params, zp, rule)
        weight = (1.0 - modulus(zp) ** 2) ** params.n
        best = max(best, weight * vector_norm(values, norm))
    return best


def probe_points(d: int, seed: int = 0, directions: int = 8,
                 radii=None) -> list[np.ndarray]:
    """Default semi-norm probe grid: random sphere directions times a
    radial grid reaching 0.95."""
    if radii is None:
        radii = [0.0] + [0.1 * k for k in range(1, 10)] + [0.95]
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((directions, 2 * d))
    dirs = gauss[:, :d] + 1j * gauss[:, d:]
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    pts = [np.zeros(d, dtype=np.complex128)]
    for r in radii:
        if r == 0.0:
            continue
        for u in dirs:
            pts.append(r * u)
    return pts


# --------------------------------------------------------------------------
# bounded test functions


@dataclass(frozen=True)
class BoundedFunction:
    """A measurable function on the ball with essential sup at most 1.

    evaluator maps an (N, d) complex array of points to (N,) values.
    """

    family: str
    evaluator: Callable = field(repr=False)
    description: str = ""


def constant_fn(c: complex) -> BoundedFunction:
    if abs(c) > 1.0:
        raise ValueError(f"|c| = {abs(c)} exceeds 1")
    return BoundedFunction(
        "constant", lambda W: np.full(W.shape[0], c, dtype=np.complex128),
        f"constant {c}",
    )


def phase_field(a, offset: float = 0.0) -> BoundedFunction:
    """Unimodular field exp(i(offset + Re<w, a>))."""
    a = np.asarray(a, dtype=np.complex128)

    def ev(W):
        return np.exp(1j * (offset + (W @ np.conj(a)).real))

    return BoundedFunction("phase-field", ev, f"phase field a={a.tolist()}")


def clipped_polynomial(d: int, rng: np.random.Generator, degree: int = 2,
                       terms: int = 6) -> BoundedFunction:
    """Random polynomial in w and conj(w), divided by a grid-estimated sup
    times 1.01 (probabilistic enforcement of the bound)."""
    expo = rng.integers(0, degree + 1, size=(terms, 2, d))
    keep = expo.sum(axis=(1, 2)) <= degree
    expo = expo[keep] if keep.any() else np.zeros((1, 2, d), dtype=np.int64)
    coef = rng.standard_normal(len(expo)) + 1j * rng.standard_normal(len(expo))

    def raw(W):
        out = np.zeros(W.shape[0], dtype=np.complex128)
        for (bh, bc), c in zip(expo, coef):
            term = np.full(W.shape[0], c, dtype=np.complex128)
            for j in range(d):
                if bh[j]:
                    term = term * W[:, j] ** int(bh[j])
                if bc[j]:
                    term = term * np.conj(W[:, j]) ** int(bc[j])
            out += term
        return out

    # sup estimate over 10^4 points, interior and boundary mixed
    gauss = rng.standard_normal((10_000, 2 * d))
    dirs = gauss[:, :d] + 1j * gauss[:, d:]
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    radii = rng.random(10_000) ** (1.0 / (2 * d))
    radii[:3_000] = 1.0
    sup = float(np.max(np.abs(raw(radii[:, None] * dirs))))
    scale = 1.0 / (1.01 * sup) if sup > 0 else 1.0

    return BoundedFunction(
        "clipped-polynomial", lambda W: scale * raw(W),
        f"clipped polynomial, {len(expo)} terms, degree <= {degree}",
    )


def sample_bounded_functions(params: KernelParams, norm: NormSpec, count: int,
                             seed: int = 0) -> list[BoundedFunction]:
    """A deterministic sample cycling through all built-in families."""
    from .extremal import extremal_evaluator, make_config

    rng = np.random.default_rng(seed)
    out: list[BoundedFunction] = []
    config = make_config(params, norm) if norm.dual_available else None
    while len(out) < count:
        k = len(out) % 4
        if k == 0:
            phi = rng.uniform(0, 2 * np.pi)
            out.append(constant_fn(rng.random() * np.exp(1j * phi)))
        elif k == 1:
            a = rng.standard_normal(params.d) + 1j * rng.standard_normal(params.d)
            out.append(phase_field(2.0 * a / max(1.0, float(np.linalg.norm(a))),
                                   rng.uniform(0, 2 * np.pi)))
        elif k == 2:
            out.append(clipped_polynomial(params.d, rng))
        elif config is not None:
            m = int(rng.integers(0, len(config.epsilons)))
            out.append(extremal_evaluator(config, m))
        else:
            out.append(clipped_polynomial(params.d, rng, degree=3))
    return out
