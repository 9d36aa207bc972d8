"""Pure-Python (numpy) reference implementations of the hot kernels.

Selected at import time by :mod:`fractalc.kernels` when the compiled
extension is unavailable or explicitly disabled.  Both backends implement
the exact same formulas; the compiled one just runs the loops in C.
"""

from __future__ import annotations

import numpy as np


def abel_weights(beta: float, n: int) -> np.ndarray:
    """Product-integration weights for the weakly singular convolution.

    For f sampled at n+1 uniform nodes s_j = a + j*h with t = s_n, the
    piecewise-linear interpolant of f integrated exactly against the kernel
    (t - s)**(beta - 1) gives

        integral ~= h**beta * sum_j w[j] * f(s_j)

    (the 1/Gamma(beta) normalization is applied by the caller).  The weights
    come from the exact cell moments of the kernel, so the rule is exact for
    affine f and keeps its order at the singular endpoint.
    """
    if n < 1:
        raise ValueError("abel_weights requires n >= 1")
    m = np.arange(1, n + 1, dtype=np.float64)  # cell index counted from t
    pm = np.power(m, beta)
    pm1 = np.power(m - 1.0, beta)
    qm = np.power(m, beta + 1.0)
    qm1 = np.power(m - 1.0, beta + 1.0)
    moment0 = (pm - pm1) / beta  # integral of u**(beta-1) over the cell
    moment1 = (qm - qm1) / (beta + 1.0)  # integral of u**beta over the cell
    w_far = moment1 - (m - 1.0) * moment0  # hat at the cell node farther from t
    w_near = m * moment0 - moment1  # hat at the cell node closer to t
    w = np.zeros(n + 1, dtype=np.float64)
    # cell m spans nodes j = n - m (far) and j = n - m + 1 (near)
    w[n - 1 :: -1] += w_far
    w[n:0:-1] += w_near
    return w


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """Signed binomial weights (-1)**k C(alpha, k), k = 0..n, by recurrence."""
    if n < 0:
        raise ValueError("gl_weights requires n >= 0")
    k = np.arange(1, n + 1, dtype=np.float64)
    out = np.empty(n + 1, dtype=np.float64)
    out[0] = 1.0
    np.cumprod((k - 1.0 - alpha) / k, out=out[1:])
    return out


def weierstrass_sum(alpha: float, q: float, n_max: int, x: np.ndarray) -> np.ndarray:
    """sum_{k=0..n_max} q**(-alpha k) cos(q**k x), elementwise over x."""
    x = np.asarray(x, dtype=np.float64)
    acc = np.zeros_like(x)
    for k in range(n_max + 1):
        acc += q ** (-alpha * k) * np.cos(q**k * x)
    return acc
