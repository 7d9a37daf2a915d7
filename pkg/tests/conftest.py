import numpy as np
import pytest

from xxdefects.model import ChainSpec
from xxdefects.rdm import defect_rdm
from xxdefects.spectrum import ZeroModeError

PRODUCTION_N = 1024
PRODUCTION_H = (1.0, 2.0)
PRODUCTION_D = tuple(range(1, 10))
PRODUCTION_EPS_D = np.round(0.05 * np.arange(1, 121), 12)


class GridPoint:
    def __init__(self, h, d, eps_d, rdm, error):
        self.h = h
        self.d = d
        self.eps_d = float(eps_d)
        self.epsilon = float(eps_d) / d
        self.rdm = rdm
        self.error = error

    def __repr__(self):
        return f"GridPoint(h={self.h}, d={self.d}, eps_d={self.eps_d})"


@pytest.fixture(scope="session")
def production_grid():
    """Defect RDMs on the default sweep grid (both fields), computed once.

    Points with an exact zero-energy level (h = 2, eps*d = 1) carry the error
    instead of an RDM.
    """
    points = []
    for h in PRODUCTION_H:
        for d in PRODUCTION_D:
            for x in PRODUCTION_EPS_D:
                spec = ChainSpec(PRODUCTION_N, h, x / d, d)
                try:
                    points.append(GridPoint(h, d, x, defect_rdm(spec), None))
                except ZeroModeError as exc:
                    points.append(GridPoint(h, d, x, None, exc))
    return points


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
