"""Backend selection and caching for the hot numerical kernels.

The compiled Cython core is used when it imported cleanly; setting the
environment variable ``FRACTALC_PURE_PYTHON=1`` forces the numpy fallback.
Both backends compute identical formulas, and ``benchmarks/bench_kernels.py``
compares them head to head.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

if os.environ.get("FRACTALC_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"


@lru_cache(maxsize=512)
def abel_weights(beta: float, n: int) -> np.ndarray:
    """Cached product-integration weight table for order ``beta``, n cells."""
    w = np.asarray(_impl.abel_weights(beta, n))
    w.setflags(write=False)
    return w


@lru_cache(maxsize=512)
def gl_weights(alpha: float, n: int) -> np.ndarray:
    """Cached Grünwald-Letnikov binomial weight table."""
    w = np.asarray(_impl.gl_weights(alpha, n))
    w.setflags(write=False)
    return w


def weierstrass_sum(alpha: float, q: float, n_max: int, x: np.ndarray) -> np.ndarray:
    return _impl.weierstrass_sum(alpha, q, n_max, x)
