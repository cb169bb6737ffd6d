import os

import pytest

from plaid.params import make_param


def golden_path(name: str) -> str:
    base = os.environ.get(
        "PLAID_GOLDEN_DIR",
        os.path.join(os.path.dirname(__file__), "golden"))
    return os.path.join(base, name)


@pytest.fixture(scope="session")
def p12():
    return make_param(1, 2)


@pytest.fixture(scope="session")
def p25():
    return make_param(2, 5)


@pytest.fixture(scope="session")
def p38():
    return make_param(3, 8)
