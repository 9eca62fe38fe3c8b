"""Gamma-based closed forms: the kernel normalization, the closed form of
the parametric ball integral, the sharp semi-norm constant, and classical
reference operator norms.

Everything is evaluated in log space so no intermediate Gamma value
overflows for d, n <= 16 and weight exponents up to ~100.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaln

from .multiindex import MAX_SUPPORTED, d_tilde


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def c_sigma(d: int, sigma: float) -> float:
    """Weight normalization Gamma(d+sigma+1)/(Gamma(sigma+1)Gamma(d+1)),
    chosen so the weighted measure of the ball is 1."""
    if d < 1:
        raise ValueError(f"require d >= 1, got {d}")
    if not sigma > -1:
        raise ValueError(f"require sigma > -1, got {sigma}")
    return math.exp(
        log_gamma(d + sigma + 1) - log_gamma(sigma + 1) - log_gamma(d + 1)
    )


def j_closed_form(c: float, t: float, d: int) -> float:
    """Supremum over the ball of the parametric integral
    J_{c,t}(z) = int (1-|w|^2)^t |1-<z,w>|^(-(d+1+t+c)) dv(w),
    attained in the boundary direction:
    Gamma(d+1)Gamma(t+1)Gamma(-c)/Gamma^2((d+1+t-c)/2).

    The integral is bounded in the ball only for c < 0, hence c >= 0 is
    rejected.
    """
    if not c < 0:
        raise ValueError(f"closed form requires c < 0 (bounded case), got c={c}")
    if not t > -1:
        raise ValueError(f"require t > -1, got {t}")
    if d < 1:
        raise ValueError(f"require d >= 1, got {d}")
    return math.exp(
        log_gamma(d + 1)
        + log_gamma(t + 1)
        + log_gamma(-c)
        - 2.0 * log_gamma((d + 1 + t - c) / 2.0)
    )


@dataclass(frozen=True)
class KernelParams:
    """Dimension d, weight exponent sigma > -1, derivative order n."""

    d: int
    sigma: float
    n: int

    def __post_init__(self):
        if self.d < 1 or self.d > MAX_SUPPORTED:
            raise ValueError(f"require 1 <= d <= {MAX_SUPPORTED}, got {self.d}")
        if self.n < 1 or self.n > MAX_SUPPORTED:
            raise ValueError(f"require 1 <= n <= {MAX_SUPPORTED}, got {self.n}")
        if not self.sigma > -1:
            raise ValueError(f"require sigma > -1, got {self.sigma}")

    @property
    def lam(self) -> float:
        """Effective kernel exponent d + 1 + sigma."""
        return self.d + 1 + self.sigma

    @property
    def c_sigma(self) -> float:
        return c_sigma(self.d, self.sigma)

    @property
    def d_tilde(self) -> int:
        return d_tilde(self.d, self.n)


def deriv_factor(params: KernelParams) -> float:
    """Gamma(lam+n)/Gamma(lam), the factor the order-n kernel derivative
    picks up."""
    return math.exp(log_gamma(params.lam + params.n) - log_gamma(params.lam))


def theoretical_norm(params: KernelParams, C: float) -> float:
    """The sharp semi-norm value C * Gamma(lam+n)Gamma(n)/Gamma^2((lam+n)/2)."""
    if not C > 0:
        raise ValueError(f"require C > 0, got {C}")
    lam, n = params.lam, params.n
    return C * math.exp(
        log_gamma(lam + n) + log_gamma(n) - 2.0 * log_gamma((lam + n) / 2.0)
    )


def disc_norm(n: int, sigma: float = 0.0) -> float:
    """One-dimensional closed form; for sigma = 0 it equals
    4(n+1)Gamma^2(n)/(n Gamma^2(n/2))."""
    return theoretical_norm(KernelParams(1, sigma, n), 1.0)


def reference_constants(kind: str, *, d: int | None = None,
                        sigma: float | None = None, p: float | None = None,
                        n: int | None = None):
    """Classical reference operator norms.

    kind "l1": L^1 norm, needs d and sigma > 0.
    kind "l2": L^2 norm, needs sigma > -1/2 (dimension-free).
    kind "lp": two-sided L^p bounds for the unweighted kernel, needs d and
               1 < p < inf; returns the pair (lower, upper).
    kind "disc": one-dimensional closed form at sigma = 0, needs n.
    """
    if kind == "l1":
        if d is None or sigma is None:
            raise ValueError("kind 'l1' needs d and sigma")
        if not sigma > 0:
            raise ValueError(f"'l1' norm requires sigma > 0, got {sigma}")
        return math.exp(
            log_gamma(d + sigma + 1)
            - 2.0 * log_gamma((d + sigma + 1) / 2.0)
            + log_gamma(sigma)
            - log_gamma(sigma + 1)
        )
    if kind == "l2":
        if sigma is None:
            raise ValueError("kind 'l2' needs sigma")
        if not sigma > -0.5:
            raise ValueError(f"'l2' norm requires sigma > -1/2, got {sigma}")
        return math.exp(0.5 * log_gamma(2 * sigma + 1) - log_gamma(sigma + 1))
    if kind == "lp":
        if d is None or p is None:
            raise ValueError("kind 'lp' needs d and p")
        if not (1 < p < math.inf):
            raise ValueError(f"'lp' bounds require 1 < p < inf, got {p}")
        q = p / (p - 1)
        lower = math.exp(
            log_gamma((d + 1) / p)
            + log_gamma((d + 1) / q)
            - 2.0 * log_gamma((d + 1) / 2.0)
        )
        upper = math.exp(
            log_gamma(d + 1) - 2.0 * log_gamma((d + 1) / 2.0)
        ) * math.pi / math.sin(math.pi / p)
        return lower, upper
    if kind == "disc":
        if n is None:
            raise ValueError("kind 'disc' needs n")
        return disc_norm(n)
    raise ValueError(f"unknown reference kind {kind!r}; use l1, l2, lp or disc")
