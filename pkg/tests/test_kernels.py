import math
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.special import binom

from fractalc import kernels
from fractalc import _kernels_py as pure


class TestAbelWeights:
    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75, 0.99])
    @pytest.mark.parametrize("n", [1, 2, 7, 64, 1000])
    def test_weights_telescope(self, beta, n):
        # The weights integrate the constant 1 against the kernel exactly:
        # sum w = n^beta / beta.
        w = kernels.abel_weights(beta, n)
        assert w.shape == (n + 1,)
        assert w.sum() == pytest.approx(n**beta / beta, rel=1e-12)

    @pytest.mark.parametrize("beta", [0.3, 0.5, 0.8])
    def test_exact_on_affine_integrands(self, beta):
        # Product integration of a piecewise-linear interpolant is exact for
        # affine f; closed forms for the two moments are the oracle.
        n, t = 57, 0.83
        h = t / n
        s = h * np.arange(n + 1)
        for c0, c1 in ((1.0, 0.0), (0.0, 1.0), (2.0, -3.0)):
            vals = c0 + c1 * s
            quad = h**beta / math.gamma(beta) * float(
                np.dot(kernels.abel_weights(beta, n), vals)
            )
            exact = c0 * t**beta / math.gamma(beta + 1.0) + c1 * t ** (
                beta + 1.0
            ) / math.gamma(beta + 2.0)
            assert quad == pytest.approx(exact, rel=1e-12)

    def test_weights_positive_for_singular_kernel(self):
        w = kernels.abel_weights(0.5, 128)
        assert np.all(w > 0.0)

    def test_cache_returns_readonly(self):
        w = kernels.abel_weights(0.5, 32)
        assert w is kernels.abel_weights(0.5, 32)
        with pytest.raises(ValueError):
            w[0] = 1.0


class TestGLWeights:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_matches_binomial_closed_form(self, alpha):
        # Independent oracle: w_k = (-1)^k * C(alpha, k) via scipy's binom.
        n = 40
        w = kernels.gl_weights(alpha, n)
        expected = np.array([(-1.0) ** k * binom(alpha, k) for k in range(n + 1)])
        np.testing.assert_allclose(w, expected, rtol=1e-12, atol=1e-15)

    def test_first_two_weights(self):
        w = kernels.gl_weights(0.5, 8)
        assert w[0] == 1.0
        assert w[1] == -0.5

    def test_cache_returns_readonly(self):
        w = kernels.gl_weights(0.25, 16)
        assert w is kernels.gl_weights(0.25, 16)
        with pytest.raises(ValueError):
            w[0] = 0.0


class TestWeierstrassSum:
    def test_shape_preserved(self):
        x = np.linspace(0.0, 1.0, 13)
        out = kernels.weierstrass_sum(0.5, 2.0, 8, x)
        assert out.shape == x.shape

    def test_scalar_array(self):
        out = kernels.weierstrass_sum(0.5, 2.0, 4, np.asarray(0.3))
        expected = sum(2.0 ** (-0.5 * k) * math.cos(2.0**k * 0.3) for k in range(5))
        assert float(out) == pytest.approx(expected, rel=1e-14)


class TestBackendParity:
    def test_backend_label(self):
        assert kernels.BACKEND in ("cython", "python")

    @pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled backend absent")
    def test_abel_weights_agree(self):
        from fractalc import _kernels_cy as fast

        # The backends order the moment arithmetic differently, so the
        # cancellation in the far weights amplifies pow rounding to ~1e-9
        # relative for n near 1000; that is far below the scheme's own error.
        for beta in (0.25, 0.5, 0.9):
            for n in (1, 3, 50, 777):
                np.testing.assert_allclose(
                    fast.abel_weights(beta, n),
                    pure.abel_weights(beta, n),
                    rtol=1e-8,
                    atol=1e-13,
                )

    @pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled backend absent")
    def test_gl_weights_agree(self):
        from fractalc import _kernels_cy as fast

        for alpha in (0.25, 0.5, 0.75):
            np.testing.assert_allclose(
                fast.gl_weights(alpha, 200),
                pure.gl_weights(alpha, 200),
                rtol=1e-13,
                atol=1e-16,
            )

    @pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled backend absent")
    def test_weierstrass_agree(self):
        from fractalc import _kernels_cy as fast

        x = np.linspace(0.0, 1.0, 101)
        np.testing.assert_allclose(
            fast.weierstrass_sum(0.5, 2.0, 24, x),
            pure.weierstrass_sum(0.5, 2.0, 24, x),
            rtol=1e-12,
        )

    def test_env_forces_pure_python(self):
        code = "import fractalc.kernels as k; print(k.BACKEND)"
        env = dict(os.environ, FRACTALC_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert out.returncode == 0
        assert out.stdout.strip() == "python"
