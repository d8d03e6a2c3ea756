import pytest

from divgaps.asymptotics.buchstab import solve_buchstab
from divgaps.asymptotics.constants import constants
from divgaps.asymptotics.context import AsymptoticContext
from divgaps.asymptotics.dfunc import solve_d
from divgaps.config import EngineConfig

COARSE_STEP = 2.0**-8


@pytest.fixture(scope="session")
def omega():
    return solve_buchstab(12.0, COARSE_STEP, 12.0)


@pytest.fixture(scope="session")
def bundle(omega):
    return constants(omega)


@pytest.fixture(scope="session")
def d_grid(omega, bundle):
    return solve_d(6.0, COARSE_STEP, omega, float(bundle.C))


@pytest.fixture(scope="session")
def small_config():
    return EngineConfig(grid_step=COARSE_STEP, d_u_max=6.0)


@pytest.fixture(scope="session")
def context(small_config):
    return AsymptoticContext(small_config)
