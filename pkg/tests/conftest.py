import numpy as np
import pytest

from polarfec import bhattacharyya_construct


@pytest.fixture(scope="session")
def spec4_2():
    return bhattacharyya_construct(4, 2)


@pytest.fixture(scope="session")
def spec8_5():
    return bhattacharyya_construct(8, 5)


@pytest.fixture(scope="session")
def spec16_11():
    return bhattacharyya_construct(16, 11)


@pytest.fixture(scope="session")
def spec128_96():
    return bhattacharyya_construct(128, 96)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
