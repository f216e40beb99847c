import pytest

from mackey_tor.rings import GREEN, TAMBARA
from mackey_tor.suite import tor_table


@pytest.fixture(scope="session")
def green2():
    return tor_table(GREEN, 2, 14, 10)


@pytest.fixture(scope="session")
def green3():
    return tor_table(GREEN, 3, 12, 8)


@pytest.fixture(scope="session")
def tambara2():
    return tor_table(TAMBARA, 2, 14, 13)


@pytest.fixture(scope="session")
def tambara3():
    return tor_table(TAMBARA, 3, 16, 13)
