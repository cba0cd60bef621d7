import pytest

from quadfactor import arith, primitive, sieve
from quadfactor.errors import PreconditionViolatedError
from quadfactor.sieve import SieveConfig

from conftest import naive_prime_set

B_POOL = (1, 2, 3, 5, 7, -2, -3)


def _history(b, upto):
    spec = arith.validate_b(b)
    return list(sieve.sieve_range(spec, SieveConfig(1, upto)))


def test_definitional_hand_examples():
    b1 = arith.validate_b(1)
    hist = _history(1, 11)
    assert not primitive.primitive_status_definitional(b1, 3, hist[:2]).has_primitive
    st5 = primitive.primitive_status_definitional(b1, 5, hist[:4])
    assert st5.has_primitive and st5.primitive_prime == 13
    st1 = primitive.primitive_status_definitional(b1, 1, [])
    assert st1.has_primitive and st1.primitive_prime == 2
    bm2 = arith.validate_b(-2)
    assert not primitive.primitive_status_definitional(bm2, 1, []).has_primitive


def test_fast_hand_examples():
    b1 = arith.validate_b(1)
    rows = {tf.n: tf for tf in _history(1, 11)}
    assert not primitive.primitive_status_fast(b1, rows[3]).has_primitive
    st4 = primitive.primitive_status_fast(b1, rows[4])
    assert st4.has_primitive and st4.primitive_prime == 17
    assert not primitive.primitive_status_fast(b1, rows[8]).has_primitive


def test_fast_rejects_small_n():
    b3 = arith.validate_b(3)
    rows = _history(3, 5)
    with pytest.raises(PreconditionViolatedError):
        primitive.primitive_status_fast(b3, rows[2])  # n = 3 = |b|


def test_rho_hand_examples():
    b1 = arith.validate_b(1)
    rep = primitive.rho(b1, 10)
    assert rep.checkpoints == [(10, 7, 0.7)]
    cen = primitive.non_primitive_census(b1, 10)
    assert cen.non_primitive == [3, 7, 8] and cen.count == 3
    assert primitive.non_primitive_census(b1, 1).non_primitive == []
    bm2 = arith.validate_b(-2)
    assert primitive.rho(bm2, 5).checkpoints[-1][1] == 3
    only = [st.n for st in primitive.classify_range(bm2, 5) if st.has_primitive]
    assert only == [2, 3, 5]


def test_definitional_prime_sets_match_naive():
    # cross-check the incremental scan against pure trial division
    for b in (1, -3):
        spec = arith.validate_b(b)
        seen = set()
        for st in primitive.classify_definitional(spec, 300):
            av = abs(st.n * st.n + b)
            new = naive_prime_set(av) - seen
            assert st.has_primitive == bool(new), (b, st.n)
            if new:
                assert st.primitive_prime == max(new)
            seen |= naive_prime_set(av)


def test_fast_agrees_with_definitional():
    # the greatest-prime-factor criterion, exercised beyond |b|
    for b in B_POOL:
        spec = arith.validate_b(b)
        defs = {st.n: st for st in primitive.classify_definitional(spec, 1200)}
        fast = {st.n: st for st in primitive.classify_range(spec, 1200)}
        for n in range(abs(b) + 1, 1201):
            d, f = defs[n], fast[n]
            assert d.has_primitive == f.has_primitive, (b, n)
            assert d.primitive_prime == f.primitive_prime, (b, n)


def test_uniqueness_beyond_b():
    for b in B_POOL:
        spec = arith.validate_b(b)
        for st in primitive.classify_definitional(spec, 1200):
            if st.n > abs(b):
                assert not st.multiple, (b, st.n)


def test_rho_methods_agree():
    for b in B_POOL:
        spec = arith.validate_b(b)
        marks = list(range(100, 2001, 100))
        auto = primitive.rho(spec, 2000, marks)
        oracle = primitive.rho(spec, 2000, marks, method="definitional")
        assert auto.checkpoints == oracle.checkpoints, b


def test_density_report_shape():
    spec = arith.validate_b(1)
    rep = primitive.rho(spec, 500, [100, 200, 500])
    xs = [r[0] for r in rep.checkpoints]
    counts = [r[1] for r in rep.checkpoints]
    assert xs == sorted(xs)
    assert counts == sorted(counts)  # rho nondecreasing
    assert all(0.0 <= r[2] <= 1.0 for r in rep.checkpoints)


def test_rho_thread_determinism():
    spec = arith.validate_b(1)
    a = primitive.rho(spec, 5000, [1000, 5000], segment_size=512, threads=1)
    b = primitive.rho(spec, 5000, [1000, 5000], segment_size=512, threads=16)
    assert a.checkpoints == b.checkpoints
