import random

import pytest

from morigal.mori import search_quadruples

# a fixed pool of valid quadruples with g = 1..5, used by several property tests
QUADRUPLE_BOX = {
    1: (range(3, 40), range(-6, 8), range(-9, 10, 2)),
    2: (range(3, 60), range(1, 8), range(-7, 10, 2)),
    3: (range(3, 80), range(1, 8), range(1, 10, 2)),
    4: (range(3, 80), range(1, 8), range(1, 10, 2)),
    5: (range(3, 140), range(1, 8), range(1, 10, 2)),
}


def valid_quadruples(per_g: int = 5, seed: int = 7):
    rng = random.Random(seed)
    out = []
    for g, (ps, bs, cs) in QUADRUPLE_BOX.items():
        found = list(search_quadruples(g, ps, bs, cs))
        assert len(found) >= per_g, (g, len(found))
        out.extend(rng.sample(found, per_g))
    return out


@pytest.fixture(scope="session")
def quadruples():
    return valid_quadruples()
