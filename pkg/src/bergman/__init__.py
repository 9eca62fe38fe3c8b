"""Bergman projection on the unit ball of C^d: weighted quadrature, sharp
Bloch semi-norm constants, and extremal-sequence experiments."""

from .constants import SphereOptResult, c_exact, c_optimize, remark_bound_check
from .extremal import (ConvergenceRow, ExtremalConfig, convergence_table,
                       dual_witness, extremal_G, lower_bound_value,
                       make_config, select_zeta0)
from .geometry import (identity_residuals, inner, jacobian_real, mobius,
                       mobius_batch)
from .kernels import backend_name
from .multiindex import (MultiIndex, alpha_matrix, d_tilde, enumerate_indices,
                         monomial_vector)
from .projection import (BoundedFunction, NormSpec, apply_T,
                         bloch_seminorm_estimate, constant_fn, custom_norm,
                         derivative_tuple, holder_witness, kernel,
                         kernel_derivative, p_norm, phase_field, vector_norm)
from .quadrature import (IntegralResult, IntegrationError, QuadratureRule,
                         default_rule, integrate_ball, integrate_weighted,
                         j_numeric)
from .special import (KernelParams, c_sigma, j_closed_form, log_gamma,
                      reference_constants, theoretical_norm)

__version__ = "0.1.0"
