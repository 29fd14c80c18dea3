import numpy as np
import pytest
from hypothesis import settings

# the harness is a verification suite: keep property examples reproducible
settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
