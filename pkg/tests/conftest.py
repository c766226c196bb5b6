import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from twodesc.catalog import fixture_groups, involution_fixtures, weak_action_corpus

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def groups():
    return fixture_groups()


@pytest.fixture(scope="session")
def corpus():
    return weak_action_corpus(40, seed=3)


@pytest.fixture(scope="session")
def z2_fixtures():
    return involution_fixtures()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
