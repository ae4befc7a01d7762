import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "nomkit",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("nomkit")

SEED = int(os.environ.get("NOMKIT_SEED", "20240817"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)
