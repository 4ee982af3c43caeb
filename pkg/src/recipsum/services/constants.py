"""
The integers k_m defined by k_m + 1!k_{m-1} + ... + (m-1)!k_1 = m·m!
"""

import logging
from threading import RLock
from typing import List

from ..models.constants import KTable
from ..utils.errors import require

logger = logging.getLogger(__name__)


class KConstantCache:
    """Memoized factorials and k values, extended on demand"""

    def __init__(self) -> None:
        self._factorials: List[int] = [1]
        self._k: List[int] = []
        self._lock = RLock()

    def factorial(self, n: int) -> int:
        with self._lock:
            while len(self._factorials) <= n:
                self._factorials.append(self._factorials[-1] * len(self._factorials))
            return self._factorials[n]

    def table(self, m: int) -> List[int]:
        with self._lock:
            for j in range(len(self._k) + 1, m + 1):
                # k_j = j·j! - Σ_{i=1}^{j-1} i!·k_{j-i}
                correction = sum(self.factorial(i) * self._k[j - i - 1] for i in range(1, j))
                self._k.append(j * self.factorial(j) - correction)
            return self._k[:m]


_cache = KConstantCache()


def k_constants(m: int) -> KTable:
    """k_1..k_m in exact integer arithmetic"""
    require(m >= 1, "k_constants", "m", m, "must be at least 1")
    return KTable(values=_cache.table(m))


def verify_recurrence(k: KTable) -> bool:
    """Whether Σ_{i=0}^{j-1} i!·k_{j-i} = j·j! holds exactly for every j <= m"""
    for j in range(1, k.m + 1):
        lhs = sum(_cache.factorial(i) * k.k(j - i) for i in range(j))
        if lhs != j * _cache.factorial(j):
            logger.debug("recurrence fails at j=%d: %d != %d", j, lhs, j * _cache.factorial(j))
            return False
    return True
