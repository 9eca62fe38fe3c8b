import math

import numpy as np
import pytest

from bergman.special import (KernelParams, c_sigma, deriv_factor, disc_norm,
                             j_closed_form, log_gamma, reference_constants,
                             theoretical_norm)

EIGHT_OVER_PI = 8.0 / math.pi


def test_log_gamma_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.57236494292470009, rel=1e-13)
    assert log_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-13)


def test_log_gamma_rejects_nonpositive():
    for x in (0.0, -1.0):
        with pytest.raises(ValueError):
            log_gamma(x)


def test_c_sigma_values():
    for d in (1, 2, 5):
        assert c_sigma(d, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert c_sigma(1, 1.0) == pytest.approx(2.0, rel=1e-14)
    # Gamma(3.5)/(Gamma(1.5)Gamma(3)) evaluated independently
    assert c_sigma(2, 0.5) == pytest.approx(1.875, rel=1e-13)
    with pytest.raises(ValueError):
        c_sigma(1, -1.0)


def test_j_closed_form_values():
    assert j_closed_form(-1.0, 0.0, 1) == pytest.approx(4.0 / math.pi, rel=1e-13)
    # sqrt(pi)/Gamma(5/4)^2, frozen from a 20-digit evaluation
    assert j_closed_form(-0.5, 0.0, 1) == pytest.approx(2.1574104047535174,
                                                        rel=1e-13)
    # the specialization used by the sharp-constant chain
    n, sigma, d = 3, 0.5, 2
    expect = math.exp(
        log_gamma(d + 1) + log_gamma(sigma + 1) + log_gamma(n)
        - 2 * log_gamma((d + 1 + sigma + n) / 2.0))
    assert j_closed_form(-n, sigma, d) == pytest.approx(expect, rel=1e-14)


def test_j_closed_form_rejects_unbounded_cases():
    with pytest.raises(ValueError):
        j_closed_form(0.0, 0.0, 1)
    with pytest.raises(ValueError):
        j_closed_form(0.5, 0.0, 1)
    with pytest.raises(ValueError):
        j_closed_form(-1.0, -1.0, 1)


def test_kernel_params_derived_fields():
    params = KernelParams(2, 0.5, 3)
    assert params.lam == 3.5
    assert params.d_tilde == 4
    assert params.c_sigma == pytest.approx(1.875, rel=1e-13)
    with pytest.raises(ValueError):
        KernelParams(0, 0.0, 1)
    with pytest.raises(ValueError):
        KernelParams(1, -1.0, 1)


def test_theoretical_norm_headline_values():
    assert theoretical_norm(KernelParams(1, 0.0, 1), 1.0) == pytest.approx(
        EIGHT_OVER_PI, rel=1e-14)
    assert theoretical_norm(KernelParams(1, 0.0, 2), 1.0) == pytest.approx(
        6.0, rel=1e-13)
    assert theoretical_norm(KernelParams(2, 0.0, 1), 1.0) == pytest.approx(
        6.0, rel=1e-13)


def test_disc_closed_form_identity():
    # 4(n+1)Gamma^2(n)/(n Gamma^2(n/2)) against the main formula
    for n in range(1, 11):
        lhs = theoretical_norm(KernelParams(1, 0.0, n), 1.0)
        rhs = 4 * (n + 1) * math.exp(2 * log_gamma(n) - 2 * log_gamma(n / 2.0)) / n
        assert lhs == pytest.approx(rhs, rel=1e-12)
        assert disc_norm(n) == pytest.approx(rhs, rel=1e-12)


def test_gradient_constant_identity():
    # n = 1 collapses to Gamma(lam+1)/Gamma^2((lam+1)/2)
    for d in (1, 2, 3):
        for sigma in (-0.5, 0.0, 1.0, 7.5):
            params = KernelParams(d, sigma, 1)
            lam = params.lam
            rhs = math.exp(log_gamma(lam + 1) - 2 * log_gamma((lam + 1) / 2.0))
            assert theoretical_norm(params, 1.0) == pytest.approx(rhs, rel=1e-12)


def test_constant_chain_collapse():
    # theoretical = C * (Gamma(lam+n)/Gamma(lam)) * c_sigma * J(-n, sigma)
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = int(rng.integers(1, 5))
        n = int(rng.integers(1, 5))
        sigma = float(rng.uniform(-0.9, 10.0))
        params = KernelParams(d, sigma, n)
        C = float(rng.uniform(0.2, 3.0))
        rhs = C * deriv_factor(params) * params.c_sigma * \
            j_closed_form(-n, sigma, d)
        assert theoretical_norm(params, C) == pytest.approx(rhs, rel=1e-12)


def test_no_overflow_in_supported_range():
    value = theoretical_norm(KernelParams(16, 100.0, 16), 1.0)
    assert math.isfinite(value) and value > 0


def test_reference_l1():
    # Gamma(3)/Gamma^2(1.5) * Gamma(1)/Gamma(2) = 8/pi
    assert reference_constants("l1", d=1, sigma=1.0) == pytest.approx(
        EIGHT_OVER_PI, rel=1e-13)
    with pytest.raises(ValueError, match="sigma > 0"):
        reference_constants("l1", d=1, sigma=0.0)


def test_reference_l2():
    assert reference_constants("l2", sigma=0.0) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError, match="sigma > -1/2"):
        reference_constants("l2", sigma=-0.5)


def test_reference_lp_bounds():
    lower, upper = reference_constants("lp", d=1, p=2.0)
    assert lower == pytest.approx(1.0, rel=1e-14)
    assert upper == pytest.approx(math.pi, rel=1e-14)
    for d in (1, 2, 3):
        for p in (1.5, 2.0, 4.0):
            lo, hi = reference_constants("lp", d=d, p=p)
            assert lo <= hi
    with pytest.raises(ValueError, match="1 < p < inf"):
        reference_constants("lp", d=1, p=1.0)


def test_reference_disc_matches_main_formula():
    assert reference_constants("disc", n=1) == pytest.approx(EIGHT_OVER_PI,
                                                             rel=1e-13)
    assert reference_constants("disc", n=2) == pytest.approx(6.0, rel=1e-13)


def test_reference_unknown_kind():
    with pytest.raises(ValueError):
        reference_constants("l3", d=1)
