import math
import random

import pytest


def brute_unitary_divisors(m):
    return {d for d in range(1, m + 1) if m % d == 0 and math.gcd(d, m // d) == 1}


def brute_is_prime(p):
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@pytest.fixture
def rng():
    return random.Random(12345)
