"""
Shared fixtures: zoo systems and the repository config
"""
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

from src.systems import excursion_point, periodic_point, zoo_system  # noqa: E402
from src.utils import load_config  # noqa: E402


@pytest.fixture(scope="session")
def config():
    return load_config(ROOT / "config.yaml")


@pytest.fixture(scope="session")
def full2():
    return zoo_system("full2")


@pytest.fixture(scope="session")
def golden():
    return zoo_system("golden")


@pytest.fixture(scope="session")
def disjoint():
    return zoo_system("disjoint_fixed")


@pytest.fixture(scope="session")
def two_cycle():
    return zoo_system("two_cycle")


@pytest.fixture(scope="session")
def rotation():
    return zoo_system("rotation_12_4")


@pytest.fixture(scope="session")
def rotation7():
    return zoo_system("rotation_7_3")


@pytest.fixture(scope="session")
def odometer5():
    return zoo_system("odometer_5")


@pytest.fixture(scope="session")
def odometer10():
    return zoo_system("odometer_10")


@pytest.fixture(scope="session")
def square():
    return zoo_system("square_16")


@pytest.fixture(scope="session")
def thue_morse():
    return zoo_system("thue_morse")


@pytest.fixture
def zeros(full2):
    return periodic_point(full2, (0,))


@pytest.fixture
def ones(full2):
    return periodic_point(full2, (1,))


@pytest.fixture
def spike(full2):
    """0^inf . 1 . 0^inf with the 1 at coordinate 0"""
    return excursion_point(full2, (0,), (1,), (0,), 0)
