"""
Shared fixtures: one sieve pass over the decade grid, the k table and a
trial-division prime count for the small-range oracles.
"""

import pytest

from recipsum.models.constants import KTable
from recipsum.services.constants import k_constants
from recipsum.services.sieve import SieveOracle, trial_division_pi

DECADES = [10 ** e for e in range(3, 9)]


@pytest.fixture(scope="session")
def oracle() -> SieveOracle:
    """Exact sums at 10^3..10^8 from a single sieve pass"""
    provider = SieveOracle()
    provider.prefetch(DECADES)
    return provider


@pytest.fixture(scope="session")
def k_table() -> KTable:
    return k_constants(12)


@pytest.fixture(scope="session")
def small_pi():
    """[π(0), ..., π(10^5)] by trial division"""
    return trial_division_pi(10 ** 5)
