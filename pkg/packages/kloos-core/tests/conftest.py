import numpy as np
import pytest

from kloos.core import ConvexPolygon, PointCloud, Settings, generate
from kloos.core.discrepancy import baseline


@pytest.fixture
def settings() -> Settings:
    return Settings(block_size=8)


@pytest.fixture
def threaded_settings() -> Settings:
    return Settings(block_size=8, threads=4)


@pytest.fixture(scope="session")
def s4():
    return generate(4)


@pytest.fixture(scope="session")
def s10():
    return generate(10)


@pytest.fixture(scope="session")
def s12():
    return generate(12)


@pytest.fixture(scope="session")
def s100():
    return generate(100)


@pytest.fixture
def single_point() -> PointCloud:
    return PointCloud(np.array([1]), np.array([1]), np.array([1]))


@pytest.fixture
def pentagon() -> ConvexPolygon:
    return ConvexPolygon([("0.1", "0.2"), ("0.6", "0.05"), ("0.9", "0.4"), ("0.7", "0.85"), ("0.2", "0.7")])


@pytest.fixture(scope="session")
def random_polygons() -> list[ConvexPolygon]:
    return baseline.random_polygons(50, seed=2024)
