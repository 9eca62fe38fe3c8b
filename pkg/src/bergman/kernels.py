"""Backend selection for the hot node-level kernels.

The compiled extension `bergman._kernels` (Cython) is preferred; the
numpy implementation `bergman._kernels_py` is the fallback. Setting the
environment variable BERGMAN_PURE_PYTHON (to any non-empty value) forces
the fallback. `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

import os

if os.environ.get("BERGMAN_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

inner_zw = _impl.inner_zw
abs1m_pow = _impl.abs1m_pow
cpow1m = _impl.cpow1m
mobius_batch = _impl.mobius_batch
pairing = _impl.pairing
monomials = _impl.monomials


def backend_name() -> str:
    return BACKEND
