import numpy as np
import pytest

from hyperdiff import numdiff


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["compiled", "python"])
def backend(request):
    """Run a test once per available backend, restoring the selection afterwards."""
    if request.param == "compiled" and not numdiff.compiled_available():
        pytest.skip("compiled kernel not built")
    before = numdiff.get_backend()
    numdiff.set_backend(request.param)
    yield request.param
    numdiff.set_backend(before)


def random_gradient(rng, scale=0.2):
    """Random F with det > 0 near the identity."""
    while True:
        F = np.eye(3) + scale * rng.standard_normal((3, 3))
        if np.linalg.det(F) > 0.2:
            return F
