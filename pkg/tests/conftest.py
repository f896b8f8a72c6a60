import random

import pytest
from hypothesis import settings

from altforms.rings import GF, QQ

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [GF(2), GF(3), GF(5), QQ]


@pytest.fixture
def rng():
    return random.Random(12345)
