"""Command-line surface: verification suites, constant tables, parametric
integrals, and convergence experiments, with CSV/JSON output.

Exit codes: 0 success, 1 failed verification, 2 configuration error.
Values are printed with 12 significant digits, error estimates with 3.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import geometry, kernels
from .constants import c_exact, c_optimize
from .extremal import (DEFAULT_EPSILONS, DIRECT_EPSILONS, convergence_table,
                       make_config)
from .projection import NormSpec, apply_T, constant_fn, p_norm
from .quadrature import (QuadratureRule, default_rule, integrate_weighted,
                         j_numeric, rule_from_dict)
from .special import (KernelParams, j_closed_form, reference_constants,
                      theoretical_norm)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fmt_err(x: float) -> str:
    return f"{x:.3g}"


def _round12(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _emit(rows: list[dict], headers: list[str], args, payload_key: str,
          extra: dict | None = None, err_fields: tuple = ()) -> None:
    """Write rows as CSV (fixed header) or JSON (schema documented in
    README) to --out or stdout. Row values are raw; floats are printed
    with 12 significant digits, error estimates with 3."""
    def cell(key, value):
        if isinstance(value, float):
            return _fmt_err(value) if key in err_fields else _fmt(value)
        return "" if value is None else str(value)

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: cell(k, row.get(k)) for k in headers})
        text = buf.getvalue()
    else:
        doc = dict(extra or {})
        doc[payload_key] = [
            {k: _round12(v) for k, v in row.items()
             if k in headers and v is not None and v != ""}
            for row in rows
        ]
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_p(text: str) -> float:
    if text in ("inf", "Inf", "INF", "infinity"):
        return math.inf
    p = float(text)
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return p


def _parse_norm(args) -> NormSpec:
    if getattr(args, "norm", None):
        spec = args.norm
        if spec.startswith("p:"):
            return p_norm(_parse_p(spec[2:]))
        if spec in ("inf", "max"):
            return p_norm(math.inf)
        raise ValueError(f"unknown norm descriptor {spec!r}; use p:P or inf")
    return p_norm(_parse_p(args.p))


def _build_rule(args, d: int) -> QuadratureRule:
    block = {}
    if getattr(args, "quad_config", None):
        text = args.quad_config
        if text.strip().startswith("{"):
            block = json.loads(text)
        else:
            with open(text, encoding="utf-8") as fh:
                block = json.load(fh)
    if getattr(args, "radial_nodes", None):
        block["radial_nodes"] = args.radial_nodes
    if getattr(args, "sphere_nodes", None):
        parts = [int(s) for s in str(args.sphere_nodes).split(",")]
        block["sphere_nodes"] = parts[0] if len(parts) == 1 else parts
    if getattr(args, "samples", None):
        block["samples"] = args.samples
        block.setdefault("scheme", "monte-carlo")
    if getattr(args, "seed", None) is not None:
        block["seed"] = args.seed
    return rule_from_dict(block, d)


# --------------------------------------------------------------------------
# verify


def _verify_checks(args):
    rng = np.random.default_rng(args.seed)
    tol = args.max_residual
    dims = [args.d] if args.d else [1, 2, 3]
    checks = []

    def random_pair(d, rmax=0.95):
        g = rng.standard_normal((2, 2 * d))
        pts = g[:, :d] + 1j * g[:, d:]
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        pts *= rmax * rng.random((2, 1))
        return pts[0], pts[1]

    res1 = res2 = inv = bnd = 0.0
    for d in dims:
        for _ in range(200):
            z, w = random_pair(d)
            r1, r2 = geometry.identity_residuals(z, w)
            res1, res2 = max(res1, r1), max(res2, r2)
            back = geometry.mobius(z, geometry.mobius(z, w))
            inv = max(inv, float(np.max(np.abs(back - w))))
            xi = w / np.linalg.norm(w)
            bnd = max(bnd, abs(float(np.linalg.norm(geometry.mobius(z, xi))) - 1.0))
    checks.append(("identity-eq1", res1, tol))
    checks.append(("identity-eq2", res2, tol))
    checks.append(("involution", inv, tol))
    checks.append(("boundary-preservation", bnd, tol))

    jac = 0.0
    for d in (1, 2):
        for _ in range(10):
            z, w = random_pair(d, rmax=0.8)
            exact = geometry.jacobian_real(z, w)
            fd = geometry.fd_jacobian_det(z, w)
            jac = max(jac, abs(fd - exact) / exact)
    checks.append(("jacobian-vs-finite-difference", jac, 1e-6))

    sigmas = [args.sigma] if args.sigma is not None else [-0.5, 0.0, 1.0, 2.5]
    worst = 0.0
    for d in (1, 2):
        for s in sigmas:
            params = KernelParams(d, s, 1)
            res = integrate_weighted(
                lambda W: np.ones(W.shape[0]), params, default_rule(d))
            excess = abs(res.value - 1.0) - 3.0 * res.error_estimate
            worst = max(worst, excess)
    checks.append(("weighted-normalization", max(worst, 0.0), 1e-13))

    combos = [(1, 0.0, 1), (2, 0.0, 1)]
    if args.sigma is not None:
        combos = [(d, args.sigma, args.n or 1) for d in ([args.d] if args.d else [1, 2])]
    worst = 0.0
    for d, s, n in combos:
        params = KernelParams(d, s, n)
        z, _ = random_pair(d, rmax=0.7)
        lamn = params.lam + params.n

        def lhs_f(W, z=z, lamn=lamn):
            return kernels.abs1m_pow(kernels.inner_zw(W, z), -lamn)

        def rhs_f(W, z=z, params=params):
            moved = kernels.mobius_batch(z, W)
            return kernels.abs1m_pow(
                kernels.inner_zw(W, z), -(params.lam - params.n))

        lhs = integrate_weighted(lhs_f, params, default_rule(d))
        rhs = integrate_weighted(rhs_f, params, default_rule(d))
        lhs_val = (1.0 - float(np.linalg.norm(z)) ** 2) ** n * lhs.value.real
        combined = 3.0 * ((1.0 - float(np.linalg.norm(z)) ** 2) ** n
                          * lhs.error_estimate + rhs.error_estimate)
        worst = max(worst, abs(lhs_val - rhs.value.real) - combined)
    checks.append(("integral-transform-identity", max(worst, 0.0), 1e-13))

    worst = 0.0
    for d in (1, 2):
        params = KernelParams(d, 0.0, 1)
        z, _ = random_pair(d, rmax=0.5)

        def mono(W):
            return W[:, 0]

        res = apply_T(mono, params, z, default_rule(d))
        excess = abs(res.value - z[0]) - 3.0 * res.error_estimate
        worst = max(worst, excess)
        const = apply_T(constant_fn(1.0), params, z, default_rule(d))
        worst = max(worst, abs(const.value - 1.0) - 3.0 * const.error_estimate)
    checks.append(("reproducing-property", max(worst, 0.0), 1e-13))
    return checks


def cmd_verify(args) -> int:
    if args.sigma is not None and not args.sigma > -1:
        raise ValueError(f"sigma > -1 required, got {args.sigma}")
    checks = _verify_checks(args)
    rows = []
    all_pass = True
    for name, residual, tolerance in checks:
        passed = residual <= tolerance
        all_pass &= passed
        rows.append({
            "check": name,
            "passed": str(passed).lower(),
            "residual": float(residual),
            "tolerance": float(tolerance),
        })
    _emit(rows, ["check", "passed", "residual", "tolerance"], args, "checks",
          {"passed": bool(all_pass)}, err_fields=("residual", "tolerance"))
    return 0 if all_pass else 1


# --------------------------------------------------------------------------
# reference / norm / jvalue / converge / cp


def cmd_reference(args) -> int:
    value = reference_constants(args.kind, d=args.d, sigma=args.sigma,
                                p=_parse_p(args.p) if args.p else None,
                                n=args.n)
    lower, upper = value if isinstance(value, tuple) else (value, value)
    row = {
        "kind": args.kind,
        "d": args.d,
        "sigma": args.sigma,
        "p": args.p,
        "n": args.n,
        "lower": float(lower),
        "upper": float(upper),
    }
    _emit([row], ["kind", "d", "sigma", "p", "n", "lower", "upper"], args,
          "reference")
    return 0


def cmd_norm(args) -> int:
    params = KernelParams(args.d, args.sigma, args.n)
    norm = _parse_norm(args)
    exact = c_exact(norm, args.d, args.n)
    if isinstance(exact, tuple):
        kind = "interval"
        lower, upper = exact
        estimate = c_optimize(norm, args.d, args.n, restarts=args.restarts,
                              seed=args.seed).value
    else:
        kind = "exact"
        lower = upper = estimate = exact
    row = {
        "d": args.d, "sigma": float(args.sigma), "n": args.n,
        "p": norm.label(),
        "C_kind": kind, "C_lower": float(lower), "C_upper": float(upper),
        "C_estimate": float(estimate),
        "lambda": float(params.lam),
        "value_lower": float(theoretical_norm(params, lower)),
        "value_upper": float(theoretical_norm(params, upper)),
    }
    headers = ["d", "sigma", "n", "p", "C_kind", "C_lower", "C_upper",
               "C_estimate", "lambda", "value_lower", "value_upper"]
    if args.format == "json":
        doc = {
            "d": args.d, "sigma": _round12(args.sigma), "n": args.n,
            "norm": norm.label(),
            "C": {"kind": kind, "lower": _round12(lower),
                  "upper": _round12(upper), "estimate": _round12(estimate)},
            "lambda": _round12(params.lam),
            "value": {"lower": _round12(theoretical_norm(params, lower)),
                      "upper": _round12(theoretical_norm(params, upper))},
        }
        if kind == "exact":
            doc["value"]["exact"] = doc["value"]["lower"]
        text = json.dumps(doc, indent=2) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    _emit([row], headers, args, "norm")
    return 0


def cmd_jvalue(args) -> int:
    z = np.zeros(args.d, dtype=np.complex128)
    z[0] = args.z
    rule = _build_rule(args, args.d)
    res = j_numeric(args.c, args.t, z, rule)
    closed = float(j_closed_form(args.c, args.t, args.d)) if args.c < 0 else None
    row = {
        "c": float(args.c), "t": float(args.t), "d": args.d, "z": float(args.z),
        "numeric": float(res.value.real), "error": float(res.error_estimate),
        "closed_form": closed,
    }
    _emit([row], ["c", "t", "d", "z", "numeric", "error", "closed_form"],
          args, "jvalue", err_fields=("error",))
    return 0


def cmd_converge(args) -> int:
    params = KernelParams(args.d, args.sigma, args.n)
    norm = _parse_norm(args)
    if not norm.dual_available:
        raise ValueError("convergence tables need a norm with a dual witness")
    if args.eps:
        epsilons = tuple(float(e) for e in args.eps.split(","))
    else:
        epsilons = DEFAULT_EPSILONS if args.route == "transformed" else DIRECT_EPSILONS
    if any(e >= 1.0 for e in epsilons):
        raise ValueError("eps < 1 required; the limit is analytic")
    config = make_config(params, norm, epsilons)
    rule = _build_rule(args, args.d)
    rows = [
        {
            "epsilon": float(r.epsilon), "value": float(r.value),
            "error": float(r.error_estimate),
            "ratio": float(r.ratio_to_theoretical),
        }
        for r in convergence_table(config, rule, args.route)
    ]
    target = theoretical_norm(params, config.sharp_constant)
    rows.append({"epsilon": "theoretical", "value": float(target),
                 "error": None, "ratio": 1.0})
    _emit(rows, ["epsilon", "value", "error", "ratio"], args, "rows",
          {"theoretical": _round12(target)}, err_fields=("error",))
    return 0


def cmd_cp(args) -> int:
    norm = p_norm(_parse_p(args.p))
    exact = c_exact(norm, args.d, args.n)
    lower, upper = exact if isinstance(exact, tuple) else (exact, exact)
    opt = c_optimize(norm, args.d, args.n, restarts=args.restarts,
                     seed=args.seed)
    row = {
        "d": args.d, "n": args.n, "p": norm.label(),
        "lower": float(lower), "upper": float(upper),
        "estimate": float(opt.value), "converged": str(opt.converged).lower(),
    }
    _emit([row], ["d", "n", "p", "lower", "upper", "estimate", "converged"],
          args, "cp")
    return 0


# --------------------------------------------------------------------------
# parser


def _add_common(sp, *names):
    if "d" in names:
        sp.add_argument("--d", type=int, help="complex dimension (>= 1)")
    if "sigma" in names:
        sp.add_argument("--sigma", type=float, help="weight exponent (> -1)")
    if "n" in names:
        sp.add_argument("--n", type=int, help="derivative order (>= 1)")
    if "p" in names:
        sp.add_argument("--p", default=None, help="p-norm exponent or 'inf'")
        sp.add_argument("--norm", default=None,
                        help="norm descriptor (p:P or inf); overrides --p")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None, help="output path (default stdout)")


def _add_rule_flags(sp):
    sp.add_argument("--radial-nodes", type=int, default=None)
    sp.add_argument("--sphere-nodes", default=None,
                    help="angular count, or mu,theta1,theta2 for d=2")
    sp.add_argument("--samples", type=int, default=None,
                    help="monte-carlo sample count (selects monte-carlo)")
    sp.add_argument("--quad-config", default=None,
                    help="JSON block or path with rule parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergman",
        description="Bergman projection on the unit ball: verification "
                    "suites, sharp constants, and convergence experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run the identity/normalization/"
                        "transform/reproducing suites")
    _add_common(sp, "d", "sigma", "n")
    sp.add_argument("--max-residual", type=float, default=1e-12,
                    help="tolerance for the algebraic identity checks")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reference", help="classical reference constants")
    sp.add_argument("--kind", required=True, choices=("l1", "l2", "lp", "disc"))
    _add_common(sp, "d", "sigma", "n")
    sp.add_argument("--p", default=None, help="exponent for kind 'lp'")
    sp.set_defaults(func=cmd_reference)

    sp = sub.add_parser("norm", help="the sharp semi-norm value")
    _add_common(sp, "d", "sigma", "n", "p")
    sp.add_argument("--restarts", type=int, default=32)
    sp.set_defaults(func=cmd_norm, p_default="2")
    sp.set_defaults(p="2")

    sp = sub.add_parser("jvalue", help="parametric ball integral, numeric "
                        "vs closed form")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--z", type=float, default=0.0,
                    help="evaluation radius along the first coordinate")
    _add_common(sp, "d")
    _add_rule_flags(sp)
    sp.set_defaults(func=cmd_jvalue)

    sp = sub.add_parser("converge", help="extremal lower-bound table")
    _add_common(sp, "d", "sigma", "n", "p")
    sp.add_argument("--eps", default=None,
                    help="comma list of evaluation radii in (0, 1); default "
                         "is the route's standard schedule")
    sp.add_argument("--route", choices=("direct", "transformed"),
                    default="transformed")
    _add_rule_flags(sp)
    sp.set_defaults(func=cmd_converge, p="2")

    sp = sub.add_parser("cp", help="the p-norm constant: bounds and estimate")
    _add_common(sp, "d", "n", "p")
    sp.add_argument("--restarts", type=int, default=32)
    sp.set_defaults(func=cmd_cp, p="2")
    sp.set_defaults(p="2")

    return parser


def _validate(args) -> None:
    if getattr(args, "d", None) is not None and args.d < 1:
        raise ValueError(f"d >= 1 required, got {args.d}")
    if getattr(args, "n", None) is not None and args.n < 1:
        raise ValueError(f"n >= 1 required, got {args.n}")
    if getattr(args, "sigma", None) is not None and not args.sigma > -1:
        raise ValueError(f"sigma > -1 required, got {args.sigma}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # subcommand-specific required parameters
    required = {
        cmd_norm: ("d", "sigma", "n"),
        cmd_converge: ("d", "sigma", "n"),
        cmd_cp: ("d", "n"),
        cmd_jvalue: ("d",),
    }
    try:
        _validate(args)
        for name in required.get(args.func, ()):
            if getattr(args, name, None) is None:
                raise ValueError(f"--{name} is required for this command")
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
