import os

import pytest
from hypothesis import HealthCheck, settings

from heapmod import fixtures_dir
from heapmod.enumeration import corpus_generate

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus():
    return corpus_generate()


@pytest.fixture(scope="session")
def fixtures():
    return str(fixtures_dir())
