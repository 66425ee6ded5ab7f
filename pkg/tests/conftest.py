import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def hermitian(rng, n, scale=1.0):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (X + X.conj().T)


def assert_close(X, Y, atol):
    X, Y = np.asarray(X), np.asarray(Y)
    assert X.shape == Y.shape
    err = float(np.max(np.abs(X - Y))) if X.size else 0.0
    assert err <= atol, f"max deviation {err:.3e} > {atol:.1e}"
