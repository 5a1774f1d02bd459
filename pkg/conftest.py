"""
Shared fixtures: small fields and the worked codes used across the test files.

Field elements are packed integers. Over GF(4) with modulus a^2 + a + 1 the
element a is 2 and a + 1 = a^2 is 3. Over GF(8) with a^3 + a + 1 the powers
a^0..a^6 are 1, 2, 4, 3, 6, 7, 5.
"""

import numpy as np
import pytest

from algebra.finite_field import GaloisField
from algebra.matrix import GFMatrix, permutation_from_one_based
from codes.linear_code import LinearCode, random_code


@pytest.fixture(scope="session")
def gf2():
    return GaloisField(2, 1)


@pytest.fixture(scope="session")
def gf4():
    return GaloisField(2, 2, 0b111)


@pytest.fixture(scope="session")
def gf8():
    return GaloisField(2, 3, 0b1011)


@pytest.fixture(scope="session")
def gf9():
    return GaloisField(3, 2)


@pytest.fixture(scope="session")
def g_6_3(gf8):
    """[6, 3, 2]_8 code: rows (1,0,0,a^5,a^2,a^4), (0,1,0,a,a^5,1), (0,0,1,0,a^5,a^5)"""
    return GFMatrix(gf8, [
        [1, 0, 0, 7, 4, 6],
        [0, 1, 0, 2, 7, 1],
        [0, 0, 1, 0, 7, 7],
    ])


@pytest.fixture(scope="session")
def code_6_3(g_6_3):
    return LinearCode(g_6_3)


@pytest.fixture(scope="session")
def g_8_4(gf4):
    """[8, 4, 2]_4 code whose distance is reached by the pairwise reflection permutation"""
    return GFMatrix(gf4, [
        [1, 0, 3, 3, 3, 0, 0, 2],
        [3, 0, 0, 3, 2, 3, 1, 3],
        [1, 3, 1, 3, 2, 0, 2, 0],
        [0, 0, 0, 2, 2, 2, 3, 2],
    ])


@pytest.fixture(scope="session")
def code_8_4(g_8_4):
    return LinearCode(g_8_4)


@pytest.fixture(scope="session")
def reflection():
    """Swaps the columns of each adjacent pair (0,1)(2,3)(4,5)(6,7)"""
    return np.array([1, 0, 3, 2, 5, 4, 7, 6])


@pytest.fixture(scope="session")
def g_10_4(gf4):
    return GFMatrix(gf4, [
        [2, 1, 3, 0, 0, 2, 1, 1, 3, 2],
        [2, 0, 2, 1, 1, 3, 2, 3, 3, 2],
        [0, 1, 3, 1, 3, 2, 0, 2, 2, 3],
        [2, 1, 1, 0, 0, 1, 3, 2, 3, 1],
    ])


@pytest.fixture(scope="session")
def code_10_4(g_10_4):
    return LinearCode(g_10_4)


@pytest.fixture(scope="session")
def chromosomes():
    """Four order chromosomes for code_10_4, listed 1-based and shifted here"""
    return {
        "c1": permutation_from_one_based([6, 4, 3, 9, 7, 10, 2, 1, 8, 5]),
        "c2": permutation_from_one_based([9, 3, 7, 10, 1, 4, 5, 2, 8, 6]),
        "c3": permutation_from_one_based([1, 8, 9, 7, 6, 2, 3, 10, 4, 5]),
        "c4": permutation_from_one_based([2, 9, 8, 3, 4, 10, 6, 5, 7, 1]),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def make_code():
    """Factory for seeded random full-rank codes"""
    def factory(field, k, n, seed=0):
        return random_code(field, k, n, np.random.default_rng(seed))
    return factory
