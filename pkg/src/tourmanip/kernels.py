"""Select the compiled kernels when built, else the numpy fallback.

Set ``TOURMANIP_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("TOURMANIP_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

INF = _kernels_py.INF


def _resolve(impl):
    """``None`` picks the active backend; a name picks from :func:`implementations`."""
    if impl is None:
        return _impl
    if isinstance(impl, str):
        impls = implementations()
        if impl not in impls:
            raise ValueError(f"unknown kernel backend {impl!r}; available: {sorted(impls)}")
        return impls[impl]
    return impl


def cup_dp(beats, member, leaves, impl=None):
    impl = _resolve(impl)
    return impl.cup_dp(
        np.ascontiguousarray(beats, dtype=np.uint8),
        np.ascontiguousarray(member, dtype=np.uint8),
        np.ascontiguousarray(leaves, dtype=np.int64),
    )


def max_points(points, member, n, impl=None):
    impl = _resolve(impl)
    return impl.max_points(
        np.ascontiguousarray(points, dtype=np.int64),
        np.ascontiguousarray(member, dtype=np.uint8),
        int(n),
    )


def implementations():
    """Every importable backend, keyed by name (used by tests and the benchmark)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
