import sys
from pathlib import Path

import pytest

import renyi_clt as rc

sys.path.insert(0, str(Path(__file__).parent))

_SPECS = {
    "uniform": rc.Uniform,
    "gamma4": lambda: rc.StandardizedGamma(4),
    "gaussian": rc.GaussianMixture.standard_normal,
    "laplace": rc.TwoSidedExponential,
}


@pytest.fixture(scope="session")
def grid_for():
    """Session-wide cache of inversion grids; building them dominates runtime."""
    cache = {}

    def get(spec_key: str, n: int, **kwargs):
        key = (spec_key, n, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = rc.density_of_normalized_sum(_SPECS[spec_key](), n, **kwargs)
        return cache[key]

    return get
