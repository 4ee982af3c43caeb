"""
Segmented sieve of Eratosthenes and the exact sum S(x) = Σ_{2<=n<=x} 1/π(n)

Segments are fixed windows [k*span, (k+1)*span) of the integers, sieved over
odd numbers only. Between consecutive primes π(n) is constant, so S(x) is
accumulated run by run: a run of g integers with π(n) = i contributes g/i.
Segment sums are reduced in segment order, whatever the thread count.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..models.sieve import ExactSumResult, SieveConfig
from ..utils.compensated import CompensatedSum
from ..utils.errors import require

logger = logging.getLogger(__name__)


def simple_sieve(limit: int) -> np.ndarray:
    """Primes <= limit from an unsegmented sieve"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_segment(lo: int, hi: int, base_primes: List[int]) -> np.ndarray:
    """Primes in [lo, hi), ascending; base_primes must cover sqrt(hi - 1)"""
    odd_lo = lo + 1 if lo % 2 == 0 else lo
    count = max(0, (hi - odd_lo + 1) // 2)
    mask = np.ones(count, dtype=bool)
    if odd_lo == 1 and count:
        mask[0] = False

    for p in base_primes:
        if p == 2:
            continue
        p2 = p * p
        if p2 >= hi:
            break
        start = max(p2, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - odd_lo) // 2::p] = False

    primes = odd_lo + 2 * np.flatnonzero(mask).astype(np.int64)
    if lo <= 2 < hi:
        primes = np.concatenate((np.array([2], dtype=np.int64), primes))
    return primes


def _segments(limit: int, span: int) -> List[Tuple[int, int]]:
    return [(lo, min(lo + span, limit + 1)) for lo in range(0, limit + 1, span)]


def iter_segments(limit: int, cfg: SieveConfig) -> Iterator[Tuple[int, int, np.ndarray]]:
    """Yield (lo, hi, primes in [lo, hi)) in ascending segment order"""
    base = simple_sieve(math.isqrt(limit)).tolist()
    bounds = _segments(limit, cfg.span)
    logger.debug("sieving [2, %d] in %d segments of %d flags, %d threads",
                 limit, len(bounds), cfg.segment_size, cfg.threads)

    if cfg.threads == 1:
        for lo, hi in bounds:
            yield lo, hi, sieve_segment(lo, hi, base)
        return

    batch_size = 2 * cfg.threads
    with ThreadPoolExecutor(max_workers=cfg.threads) as executor:
        for start in range(0, len(bounds), batch_size):
            batch = bounds[start:start + batch_size]
            # map preserves submission order
            results = executor.map(lambda b: sieve_segment(b[0], b[1], base), batch)
            for (lo, hi), primes in zip(batch, results):
                yield lo, hi, primes


def run_terms(lo: int, hi: int, primes: np.ndarray, pi_before: int) -> np.ndarray:
    """Terms g/π for the runs of constant π(n) covering n in [lo, hi)

    primes are the primes in [lo, hi) and pi_before = π(lo - 1). Runs with
    π = 0 (n < 2) are dropped.
    """
    bounds = np.concatenate((np.array([lo], dtype=np.int64), primes, np.array([hi], dtype=np.int64)))
    lengths = np.diff(bounds)
    pis = pi_before + np.arange(lengths.size, dtype=np.int64)
    keep = (lengths > 0) & (pis > 0)
    return lengths[keep].astype(np.float64) / pis[keep].astype(np.float64)


def _sweep(checkpoints: Iterable[int], cfg: SieveConfig) -> Dict[int, Tuple[ExactSumResult, int]]:
    """One ascending sieve pass recording (S(x), π(x)) at every checkpoint"""
    points = sorted(set(checkpoints))
    limit = points[-1]
    acc = CompensatedSum()
    pi_before = 0
    results: Dict[int, Tuple[ExactSumResult, int]] = {}
    pending = iter(points)
    nxt = next(pending, None)

    for lo, hi, primes in iter_segments(limit, cfg):
        while nxt is not None and nxt < hi:
            inside = primes[primes <= nxt]
            partial = acc.copy()
            partial.add_block(run_terms(lo, nxt + 1, inside, pi_before))
            results[nxt] = (
                ExactSumResult(x=nxt, value=partial.value,
                               comp_error_bound=partial.error_bound, n_terms=nxt - 1),
                pi_before + int(inside.size),
            )
            nxt = next(pending, None)
        acc.add_block(run_terms(lo, hi, primes, pi_before))
        pi_before += int(primes.size)

    return results


def primes_up_to(limit: int, cfg: Optional[SieveConfig] = None) -> np.ndarray:
    """All primes <= limit, ascending"""
    require(limit >= 2, "primes_up_to", "limit", limit, "must be at least 2")
    cfg = cfg or SieveConfig(limit=limit)
    chunks = [primes for _, _, primes in iter_segments(limit, cfg)]
    return np.concatenate(chunks)


def pi_stream(limit: int, cfg: Optional[SieveConfig] = None) -> Iterator[Tuple[int, int]]:
    """Stream (n, π(n)) for n = 2..limit"""
    require(limit >= 2, "pi_stream", "limit", limit, "must be at least 2")
    cfg = cfg or SieveConfig(limit=limit)
    pi_before = 0
    for lo, hi, primes in iter_segments(limit, cfg):
        marks = np.zeros(hi - lo, dtype=np.int64)
        marks[primes - lo] = 1
        pis = pi_before + np.cumsum(marks)
        start = max(lo, 2)
        yield from zip(range(start, hi), pis[start - lo:].tolist())
        pi_before += int(primes.size)


def pi(x: int, cfg: Optional[SieveConfig] = None) -> int:
    """π(x), the number of primes not exceeding x"""
    require(x >= 2, "pi", "x", x, "must be at least 2")
    cfg = cfg or SieveConfig(limit=x)
    return sum(int(primes.size) for _, _, primes in iter_segments(x, cfg))


def exact_recip_sum(x: int, cfg: Optional[SieveConfig] = None) -> ExactSumResult:
    """S(x) = Σ_{2<=n<=x} 1/π(n) with a compensated, order-fixed reduction"""
    require(x >= 2, "exact_recip_sum", "x", x, "must be at least 2")
    cfg = cfg or SieveConfig(limit=x)
    result, _ = _sweep([x], cfg)[x]
    return result


class SieveOracle:
    """Exact-sum provider for the fitting routines

    prefetch() computes every requested checkpoint in a single sieve pass;
    values are bit-identical to exact_recip_sum(x) with the same segment size.
    """

    def __init__(self, segment_size: int = 1 << 20, threads: int = 1):
        self.segment_size = segment_size
        self.threads = threads
        self._cache: Dict[int, Tuple[ExactSumResult, int]] = {}

    def prefetch(self, grid: Iterable[int]) -> None:
        missing = sorted({int(x) for x in grid} - set(self._cache))
        if not missing:
            return
        require(missing[0] >= 2, "SieveOracle.prefetch", "x", missing[0], "must be at least 2")
        cfg = SieveConfig(limit=missing[-1], segment_size=self.segment_size, threads=self.threads)
        self._cache.update(_sweep(missing, cfg))

    def result(self, x: int) -> ExactSumResult:
        if x not in self._cache:
            self.prefetch([x])
        return self._cache[x][0]

    def pi(self, x: int) -> int:
        if x not in self._cache:
            self.prefetch([x])
        return self._cache[x][1]

    def __call__(self, x: int) -> float:
        return self.result(x).value


def trial_division_pi(limit: int) -> List[int]:
    """[π(0), π(1), ..., π(limit)] by trial division"""
    found: List[int] = []
    counts = [0] * (limit + 1)
    for n in range(2, limit + 1):
        root = math.isqrt(n)
        for p in found:
            if p > root:
                found.append(n)
                break
            if n % p == 0:
                break
        else:
            found.append(n)
        counts[n] = len(found)
    return counts


def naive_recip_sum(x: int, compensated: bool = False) -> float:
    """Σ_{2<=n<=x} 1/π(n) term by term with trial-division π"""
    counts = trial_division_pi(x)
    terms = [1.0 / counts[n] for n in range(2, x + 1)]
    if compensated:
        return math.fsum(terms)
    total = 0.0
    for term in terms:
        total += term
    return total
