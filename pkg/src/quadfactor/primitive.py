"""Primitive-divisor classification and the density count rho_b(x).

A term P_n = n^2 + b has a primitive divisor when some d > 1 divides it
while being coprime to every earlier nonzero term; equivalently, when
P_n carries a prime that no earlier term does.  Two classifiers are
provided:

* the definitional one, which scans all earlier prime factors, and
* the fast one, valid for n > |b|: a primitive divisor exists exactly
  when the greatest prime factor of n^2 + b exceeds 2n, and it is then
  that prime (and unique).

rho() counts classified terms up to x, using the definitional path for
the finitely many n <= |b| and the fast path beyond.
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from . import arith, sieve
from .arith import SequenceSpec
from .errors import PreconditionViolatedError
from .sieve import SieveConfig, TermFactorization


@dataclass(frozen=True, slots=True)
class PrimitiveStatus:
    n: int
    has_primitive: bool
    primitive_prime: Optional[int] = None
    multiple: bool = False  # >1 new prime; only possible for n <= |b|


@dataclass(frozen=True)
class DensityReport:
    spec: SequenceSpec
    checkpoints: List[Tuple[int, int, float]]  # (x, rho, rho/x)


@dataclass(frozen=True)
class CensusReport:
    spec: SequenceSpec
    x: int
    non_primitive: List[int]
    count: int


def _term_primes(tf: TermFactorization):
    for p, _ in tf.factors:
        yield p
    if tf.cofactor > 1:
        yield tf.cofactor


def primitive_status_definitional(spec: SequenceSpec, n: int,
                                  history: Sequence[TermFactorization]) -> PrimitiveStatus:
    """Classify by direct comparison against the factorizations of P_1..P_{n-1}.

    Oracle path: factors the term itself and collects every prime seen
    earlier, so cost grows with n.  Works for all n, including n <= |b|
    where more than one new prime can appear (the largest is reported
    and `multiple` is set).
    """
    seen = set()
    for tf in history:
        if tf.n < n:
            seen.update(_term_primes(tf))
    av = abs(arith.term(spec, n))
    new = [p for p, _ in arith.factorize(av) if p not in seen] if av > 1 else []
    if not new:
        return PrimitiveStatus(n, False)
    return PrimitiveStatus(n, True, max(new), len(new) > 1)


def primitive_status_fast(spec: SequenceSpec, tf: TermFactorization) -> PrimitiveStatus:
    """Classify via the greatest-prime-factor criterion; needs n > |b|."""
    if tf.n <= abs(spec.b):
        raise PreconditionViolatedError(
            f"fast criterion needs n > |b|, got n = {tf.n}, b = {spec.b}")
    pp = sieve.p_plus_of(tf)
    if pp > 2 * tf.n:
        return PrimitiveStatus(tf.n, True, pp)
    return PrimitiveStatus(tf.n, False)


def classify_definitional(spec: SequenceSpec, x: int) -> Iterator[PrimitiveStatus]:
    """Definitional scan of n = 1..x with an incrementally grown prime set."""
    seen = set()
    for n in range(1, x + 1):
        av = abs(arith.term(spec, n))
        if av <= 1:
            yield PrimitiveStatus(n, False)
            continue
        fac = arith.factorize(av)
        new = [p for p, _ in fac if p not in seen]
        seen.update(p for p, _ in fac)
        if new:
            yield PrimitiveStatus(n, True, max(new), len(new) > 1)
        else:
            yield PrimitiveStatus(n, False)


def classify_range(spec: SequenceSpec, x: int, *, segment_size: int = sieve.DEFAULT_SEGMENT,
                   threads: int = 1) -> Iterator[PrimitiveStatus]:
    """Classify n = 1..x: definitional while n <= |b|, fast criterion after.

    Single sieve pass with prime_limit 2(x+1); the seen-prime set is
    only maintained over the definitional prefix.
    """
    cut = abs(spec.b)
    cfg = SieveConfig(1, x + 1, segment_size=segment_size)
    seen = set()
    for tf in sieve.sieve_range(spec, cfg, threads=threads):
        if tf.n <= cut:
            new = [p for p in _term_primes(tf) if p not in seen]
            seen.update(_term_primes(tf))
            if new:
                yield PrimitiveStatus(tf.n, True, max(new), len(new) > 1)
            else:
                yield PrimitiveStatus(tf.n, False)
        else:
            pp = tf.cofactor if tf.cofactor > 1 else (tf.factors[-1][0] if tf.factors else 0)
            if pp > 2 * tf.n:
                yield PrimitiveStatus(tf.n, True, pp)
            else:
                yield PrimitiveStatus(tf.n, False)


def rho(spec: SequenceSpec, x: int, checkpoints: Optional[Sequence[int]] = None, *,
        segment_size: int = sieve.DEFAULT_SEGMENT, threads: int = 1,
        method: str = "auto") -> DensityReport:
    """Count terms with a primitive divisor up to x, with running ratios.

    checkpoints is an ascending sequence of positions <= x at which
    (x_i, rho(x_i), rho(x_i)/x_i) rows are recorded; default just x.
    method "auto" uses the mixed definitional/fast path, "definitional"
    forces the oracle scan (for cross-checks at small x).
    """
    if x < 1:
        raise PreconditionViolatedError("x must be >= 1")
    marks = sorted({m for m in checkpoints if 1 <= m <= x}) if checkpoints else [x]
    if not marks or marks[-1] != x:
        marks.append(x)
    if method == "definitional":
        stream = classify_definitional(spec, x)
    else:
        stream = classify_range(spec, x, segment_size=segment_size, threads=threads)
    rows = []
    count = 0
    mi = 0
    for st in stream:
        if st.has_primitive:
            count += 1
        while mi < len(marks) and st.n == marks[mi]:
            rows.append((st.n, count, count / st.n))
            mi += 1
    return DensityReport(spec, rows)


def non_primitive_census(spec: SequenceSpec, x: int, *,
                         segment_size: int = sieve.DEFAULT_SEGMENT,
                         threads: int = 1) -> CensusReport:
    """Indices n <= x whose term has no primitive divisor, with their count."""
    idx = [st.n for st in classify_range(spec, x, segment_size=segment_size, threads=threads)
           if not st.has_primitive]
    return CensusReport(spec, x, idx, len(idx))
