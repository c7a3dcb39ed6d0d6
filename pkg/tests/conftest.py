import pytest

from zetakkr.zeroscan import ScanConfig, find_zeros


@pytest.fixture(scope="session")
def catalog_100():
    return find_zeros(ScanConfig(t_min=0.0, t_max=100.0, grid_step=0.05, refine_tolerance=1e-9))


@pytest.fixture(scope="session")
def catalog_1000():
    return find_zeros(ScanConfig(t_min=0.0, t_max=1000.0, grid_step=0.05, refine_tolerance=1e-9))
