import pytest

from src.fields import field_new
from src.services.evaluation_code import build_code


@pytest.fixture(scope="session")
def f2():
    return field_new(2)


@pytest.fixture(scope="session")
def f3():
    return field_new(3)


@pytest.fixture(scope="session")
def f4():
    return field_new(4)


@pytest.fixture(scope="session")
def code22(f2):
    return build_code(2, f2)


@pytest.fixture(scope="session")
def code23(f3):
    return build_code(2, f3)


@pytest.fixture(scope="session")
def code32(f2):
    return build_code(3, f2)
