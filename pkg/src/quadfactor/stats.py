"""Diagnostic sums over the factored sequence and two classical densities.

chebyshev_report() aggregates, from a full factor sieve of n <= x, the
log of the term product Q_x = prod |n^2 + b|, its exponent-weighted
split across primes below and above 2x (the sets S and S'), and the
finer partition of S' at Kx.  The split is an exact identity:
sum_S + sum_S' equals log Q_x up to float rounding.

nx_histogram() counts, for n in [x, 2x), how many terms each prime
p >= 2x divides; vx() sums those counts over a window (v, e*v].

chowla_todd_density() counts m <= x whose greatest prime factor exceeds
2*sqrt(m) (natural density log 2), and mertens_sum() accumulates the
reciprocals of the primes below x.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import arith, sieve
from .arith import SequenceSpec
from .errors import OutOfDomainError, PreconditionViolatedError, WindowOutOfRangeError
from .sieve import SieveConfig

LOG2 = math.log(2.0)


class _Kahan:
    """Compensated accumulator; deterministic for a fixed add order."""

    __slots__ = ("total", "_c")

    def __init__(self):
        self.total = 0.0
        self._c = 0.0

    def add(self, v: float) -> None:
        y = v - self._c
        t = self.total + y
        self._c = (t - self.total) - y
        self.total = t


@dataclass(frozen=True)
class ChebyshevReport:
    x: int
    K: float
    log_Qx: float
    sum_S: float       # sum of e_p log p over primes p < 2x dividing Q_x
    sum_Sprime: float  # same over p >= 2x (where every exponent is 1)
    s: int
    s_prime: int
    t: int             # primes in (2x, Kx)
    u: int             # primes in [Kx, inf)


@dataclass(frozen=True)
class NxHistogram:
    x: int
    counts: Dict[int, int]  # p -> number of n in [x, 2x) with p | n^2 + b
    total: int
    weighted: float         # sum of N_x(p) log p


def _split_cofactor(c: int, limit: int):
    """Primes of a sieve cofactor; a single prime unless c > limit^2."""
    if c <= limit * limit or arith.is_prime(c):
        yield c, 1
    else:
        yield from arith.factorize(c)


def chebyshev_report(spec: SequenceSpec, x: int, K: float = 4.0, *,
                     segment_size: int = sieve.DEFAULT_SEGMENT,
                     threads: int = 1) -> ChebyshevReport:
    """Aggregate the exact prime decomposition of Q_x = prod_{n<=x} |n^2 + b|."""
    if x < 2:
        raise PreconditionViolatedError("x must be >= 2")
    if K <= 2:
        raise PreconditionViolatedError("K must be > 2")
    limit = 2 * x
    cfg = SieveConfig(1, x + 1, prime_limit=limit, segment_size=segment_size)
    exps: Dict[int, int] = {}
    log_q = _Kahan()
    for tf in sieve.sieve_range(spec, cfg, threads=threads):
        av = abs(tf.n * tf.n + spec.b)
        if av > 1:
            log_q.add(math.log(av))
        for p, e in tf.factors:
            exps[p] = exps.get(p, 0) + e
        if tf.cofactor > 1:
            for p, e in _split_cofactor(tf.cofactor, limit):
                exps[p] = exps.get(p, 0) + e

    bound = 2 * x
    kx = K * x
    sum_s = _Kahan()
    sum_sp = _Kahan()
    s = s_prime = t = u = 0
    for p in sorted(exps):
        w = exps[p] * math.log(p)
        if p < bound:
            sum_s.add(w)
            s += 1
        else:
            sum_sp.add(w)
            s_prime += 1
            if p < kx:
                t += 1
            else:
                u += 1
    return ChebyshevReport(x, K, log_q.total, sum_s.total, sum_sp.total,
                           s, s_prime, t, u)


def nx_histogram(spec: SequenceSpec, x: int, *,
                 segment_size: int = sieve.DEFAULT_SEGMENT,
                 threads: int = 1) -> NxHistogram:
    """Count n in [x, 2x) divisible by each prime p >= 2x.

    Sieving with prime_limit 2x leaves exactly those primes in the
    cofactors; each term contributes at most one (two primes above 2x
    would multiply past n^2 + b for any n < 2x once b < 4x - 1).
    """
    if x < 2:
        raise PreconditionViolatedError("x must be >= 2")
    limit = 2 * x
    cfg = SieveConfig(x, 2 * x, prime_limit=limit, segment_size=segment_size)
    counts: Dict[int, int] = {}
    for tf in sieve.sieve_range(spec, cfg, threads=threads):
        hit = set()
        for p, _ in tf.factors:
            if p >= limit:  # oracle-zone terms can carry large primes in factors
                hit.add(p)
        if tf.cofactor > 1:
            for p, _ in _split_cofactor(tf.cofactor, limit):
                hit.add(p)
        for p in hit:
            counts[p] = counts.get(p, 0) + 1
    weighted = _Kahan()
    for p in sorted(counts):
        weighted.add(counts[p] * math.log(p))
    return NxHistogram(x, counts, sum(counts.values()), weighted.total)


def vx(spec: SequenceSpec, x: int, v: float, *,
       hist: Optional[NxHistogram] = None, threads: int = 1) -> int:
    """Sum of N_x(p) over primes p in the window (v, e*v]; needs v >= 2x."""
    if v < 2 * x:
        raise WindowOutOfRangeError(f"window start {v} below 2x = {2 * x}")
    if hist is None:
        hist = nx_histogram(spec, x, threads=threads)
    hi = math.e * v
    return sum(c for p, c in hist.counts.items() if v < p <= hi)


def chowla_todd_density(x: int, *, segment_size: int = 1 << 20) -> Tuple[int, float]:
    """Count 2 <= m <= x with P+(m)^2 > 4m, and the ratio count/x.

    Segmented largest-prime-factor sieve: per segment, divide every
    entry by the primes up to sqrt(x) (all powers), tracking the
    largest small prime that hit; a leftover above 1 is the greatest
    prime factor, otherwise the tracked small prime is.
    """
    if x < 2:
        raise PreconditionViolatedError("x must be >= 2")
    ps = arith.primes_upto(arith.isqrt(x))
    count = 0
    for lo in range(2, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        length = hi - lo
        rem = list(range(lo, hi))
        best = [1] * length
        for p in ps:
            start = (-lo) % p
            best[start::p] = [p] * len(range(start, length, p))
            pk = p
            while pk < hi:
                s2 = (-lo) % pk
                rem[s2::pk] = [v // p for v in rem[s2::pk]]
                pk *= p
        m = lo
        for i in range(length):
            r = rem[i]
            q = r if r > 1 else best[i]
            if q * q > 4 * m:
                count += 1
            m += 1
    return count, count / x


def mertens_sum(x: int) -> float:
    """Sum of 1/p over primes p < x, accumulated in ascending order."""
    if x < 3:
        raise OutOfDomainError("x must be >= 3")
    acc = _Kahan()
    for p in arith.primes_upto(x - 1):
        acc.add(1.0 / p)
    return acc.total
