import pytest

from twodulv import fixtures
from twodulv.core import LinguisticScale


@pytest.fixture(scope="session")
def scale():
    # reference dataset desk scale: 7 judgment terms, 5 reliability terms
    return LinguisticScale(7, 5)


@pytest.fixture(scope="session")
def paper_session():
    return fixtures.paper_session()


@pytest.fixture(scope="session")
def paper_session_dict():
    return fixtures.paper_session_dict()


@pytest.fixture(scope="session")
def paper_values():
    return fixtures.paper_values()
