import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings

from coexist import _backend, _fallback, families
from coexist.sampling import random_effect
from conftest import assert_close, seeds

compiled = pytest.importorskip("coexist._kernels", reason="compiled kernels not built")

ARGS = (1e-10, 2000, 1e-12, 50)


def _pair(seed, n):
    rng = np.random.default_rng(seed)
    return random_effect(n, rng), random_effect(n, rng)


@pytest.mark.parametrize("n", [2, 3, 5])
@given(seed=seeds)
@settings(max_examples=25)
def test_compiled_matches_fallback(n, seed):
    A, B = _pair(seed, n)
    Gc, sc, rc, ic = compiled.dykstra(A, B, *ARGS)
    Gp, sp, rp, ip = _fallback.dykstra(A, B, *ARGS)
    assert (sc, ic) == (sp, ip)
    assert rc == pytest.approx(rp, abs=1e-12)
    assert_close(Gc, Gp, 1e-10)


@pytest.mark.parametrize("n", [2, 4])
def test_relaxed_mode_matches(n):
    A, B = _pair(11, n)
    x0 = 0.1 * np.eye(n)
    outs = [k.dykstra(A, B, *ARGS, x0=x0, relax=1.5) for k in (compiled, _fallback)]
    assert outs[0][1:2] == outs[1][1:2] and outs[0][3] == outs[1][3]
    assert_close(outs[0][0], outs[1][0], 1e-10)


def test_status_codes():
    T = families.tensor_example()
    for k in (compiled, _fallback):
        assert k.dykstra(T["A"], T["B"], *ARGS)[1] == _backend.FEASIBLE
        assert k.dykstra(T["A1"], T["B1"], *ARGS)[1] == _backend.STALLED
        G, status, res, iters = k.dykstra(T["A1"], T["B1"], 1e-10, 5, 1e-12, 50)
        assert status == _backend.MAX_ITER and iters == 5 and res > 0


def test_x0_is_not_modified():
    A, B = _pair(5, 3)
    x0 = np.zeros((3, 3), complex)
    compiled.dykstra(A, B, *ARGS, x0=x0)
    assert not x0.any()


def test_backend_selected():
    assert _backend.COMPILED and _backend.BACKEND == "cython"
    assert _backend.dykstra is compiled.dykstra


def test_pure_python_switch():
    env = dict(os.environ, COEXIST_PURE_PYTHON="1")
    code = "import coexist; print(coexist.BACKEND, coexist.COMPILED)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.split() == ["python", "False"]
