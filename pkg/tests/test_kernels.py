import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import logsumexp

from evgrow import kernels
from evgrow.kernels import _pykernels

try:
    from evgrow.kernels import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

IMPLS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


def inputs(seed, m=50, k=5, d=2):
    rng = np.random.default_rng(seed)
    thetas = rng.standard_normal((k, d))
    return rng.standard_normal((m, d)), np.log(rng.dirichlet(np.ones(k))), thetas, 0.5 * (thetas**2).sum(1)


class TestKernels:
    @pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
    def test_mixture_matches_logsumexp(self, impl):
        ys, lw, th, lz = inputs(0)
        ref = logsumexp(lw + 3.0 * (ys @ th.T - lz), axis=1)
        np.testing.assert_allclose(kernels.mixture_log_ratio(ys, lw, th, lz, 3, impl=impl), ref, rtol=1e-13)

    @pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
    def test_best_ties_go_to_later_index(self, impl):
        th = np.array([[1.0], [1.0], [-1.0]])
        lz = np.array([0.5, 0.5, 0.5])
        val, idx = kernels.best_log_ratio(np.array([1.0, -1.0]), th, lz, 1, impl=impl)
        np.testing.assert_array_equal(idx, [1, 2])
        np.testing.assert_allclose(val, [0.5, 0.5])

    @pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
    def test_zero_weight_component(self, impl):
        ys, lw, th, lz = inputs(1, k=2)
        lw = np.array([0.0, -np.inf])
        np.testing.assert_allclose(kernels.mixture_log_ratio(ys, lw, th, lz, 1, impl=impl),
                                   ys @ th[0] - lz[0], rtol=1e-13)

    @pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 200))
    def test_backends_agree(self, seed, n):
        ys, lw, th, lz = inputs(seed)
        a = kernels.mixture_log_ratio(ys, lw, th, lz, n, impl=_pykernels)
        b = kernels.mixture_log_ratio(ys, lw, th, lz, n, impl=_ckernels)
        # summation order differs; rounding scales with the terms, i.e. with n
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14 * n)
        va, ia = kernels.best_log_ratio(ys, th, lz, n, impl=_pykernels)
        vb, ib = kernels.best_log_ratio(ys, th, lz, n, impl=_ckernels)
        np.testing.assert_array_equal(ia, ib)
        np.testing.assert_allclose(va, vb, rtol=1e-12, atol=1e-14 * n)

    def test_pure_python_switch(self):
        env = {**os.environ, "EVGROW_PURE_PYTHON": "1"}
        out = subprocess.run([sys.executable, "-c", "from evgrow import kernels; print(kernels.BACKEND)"],
                             env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "python"

    def test_default_backend(self):
        expected = "cython" if _ckernels is not None and not os.environ.get("EVGROW_PURE_PYTHON") else "python"
        assert kernels.BACKEND == expected
