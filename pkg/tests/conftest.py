import pytest

from spark_forge import FieldContext


@pytest.fixture(scope="session")
def gf2():
    return FieldContext(1)


@pytest.fixture(scope="session")
def gf4():
    return FieldContext(2)


@pytest.fixture(scope="session")
def gf8():
    return FieldContext(3)


@pytest.fixture(scope="session")
def gf16():
    return FieldContext(4)
