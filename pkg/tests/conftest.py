import math
import random

import pytest


@pytest.fixture
def rng():
    # one fixed stream per test so failures replay exactly
    return random.Random(0x5EED)


def coprime_pairs(limit):
    """All (p, q) with 1 <= q < p <= limit, gcd = 1."""
    for p in range(2, limit + 1):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                yield p, q
