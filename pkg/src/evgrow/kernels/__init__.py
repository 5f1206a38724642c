"""Hot loops: log-likelihood ratios over a finite set of candidate means.

Both kernels take outcomes ``ys`` of shape ``(m, d)`` and candidates given by
natural parameters ``thetas`` ``(k, d)`` with log-partitions ``log_zs``:

``mixture_log_ratio``
    ``log sum_j w_j exp(n (theta_j . y - log Z_j))``, computed stably.
``best_log_ratio``
    ``max_j n (theta_j . y - log Z_j)`` and the maximising index; ties go to
    the largest index.

The compiled extension is used when it was built; set ``EVGROW_PURE_PYTHON=1``
to force the NumPy fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("EVGROW_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def _prep(ys, thetas, log_zs):
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    if ys.ndim == 1:
        ys = ys[:, None]
    if thetas.ndim == 1:
        thetas = thetas[:, None]
    return ys, thetas, np.ascontiguousarray(log_zs, dtype=np.float64).reshape(-1)


def mixture_log_ratio(ys, log_weights, thetas, log_zs, n, impl=None):
    ys, thetas, log_zs = _prep(ys, thetas, log_zs)
    lw = np.ascontiguousarray(log_weights, dtype=np.float64).reshape(-1)
    return (impl or _impl).mixture_log_ratio(ys, lw, thetas, log_zs, float(n))


def best_log_ratio(ys, thetas, log_zs, n, impl=None):
    ys, thetas, log_zs = _prep(ys, thetas, log_zs)
    return (impl or _impl).best_log_ratio(ys, thetas, log_zs, float(n))


__all__ = ["BACKEND", "mixture_log_ratio", "best_log_ratio"]
