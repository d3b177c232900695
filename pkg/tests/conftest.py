import numpy as np
import pytest

from distal_beam import BeamConfig, fit_initial_curvature
from distal_beam.curvature import ArcGrid

# reference scenario: a0 recovered from (L - L2)/theta(L) = 0.08/0.52
TABLE1_L = 1.0
TABLE1_A0 = 0.08 / 0.52
TABLE1_THETA_TIP = 0.52
TABLE1_THETA_BAR = np.arctan(0.053)


@pytest.fixture(scope="session")
def table1_cfg():
    return BeamConfig(length=TABLE1_L, offset=TABLE1_A0, n_modes=3, grid=ArcGrid(TABLE1_L, 2049))


@pytest.fixture(scope="session")
def table1_kappa(table1_cfg):
    return fit_initial_curvature((TABLE1_THETA_TIP, TABLE1_THETA_BAR), table1_cfg)
