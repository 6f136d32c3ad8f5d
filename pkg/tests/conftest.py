import numpy as np
import pytest

SEED = 20240611


@pytest.fixture(scope="session")
def random_alphas():
    """100 uniform draws from the open interval (0, 1), fixed seed."""
    rng = np.random.default_rng(SEED)
    a = rng.uniform(0.0, 1.0, 100)
    return [float(v) for v in a if 0.0 < v < 1.0]


@pytest.fixture(scope="session")
def alpha_grid_21():
    """21 equally spaced alphas strictly inside (0, 1)."""
    return [k / 22 for k in range(1, 22)]
