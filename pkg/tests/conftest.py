import pytest

from authn_catalog import catalog_store
from authn_catalog.authn_schemas import authenticator_scheme, technique_scheme


@pytest.fixture(scope="session")
def seed():
    document, warnings = catalog_store.load_seed()
    return document, warnings


@pytest.fixture(scope="session")
def seed_document(seed):
    return seed[0]


@pytest.fixture(scope="session")
def auth_scheme():
    return authenticator_scheme()


@pytest.fixture(scope="session")
def tech_scheme():
    return technique_scheme()
