import pytest

from plmodel.client import open_client


@pytest.fixture()
def client():
    """HTTP client bound to the in-process service."""
    with open_client() as c:
        yield c
