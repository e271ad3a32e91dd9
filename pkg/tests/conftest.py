import pytest

from hallalg import backend
from hallalg.quiver import linear_quiver
from hallalg.reps import Heart


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile every kernel once so timed checks measure the math
    backend.warm_up()


@pytest.fixture(scope="session")
def a1p2():
    return Heart(linear_quiver(1), 2)


@pytest.fixture(scope="session")
def a2p2():
    return Heart(linear_quiver(2), 2)


@pytest.fixture(scope="session")
def a1p3():
    return Heart(linear_quiver(1), 3)


@pytest.fixture(scope="session")
def a2p3():
    return Heart(linear_quiver(2), 3)
