import numpy as np
import pytest

from dmlaw import density


@pytest.fixture(scope="session")
def grid_half():
    """Reference table at alpha = 1/2, default resolution (shared: ~0.3 s)."""
    return density.build_density(0.5)


@pytest.fixture(scope="session")
def coarse_grids():
    """Cheap tables (h = 2**-10) for every tail exponent the checks sweep."""
    return {a: density.build_density(a, h=2.0**-10) for a in (0.1, 0.25, 0.5, 0.75, 0.9)}


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.Philox(key=np.array([987, 0], dtype=np.uint64)))
