import pytest

from quadfactor import arith, stormer
from quadfactor.errors import CapExceededError, PreconditionViolatedError

from conftest import naive_factorize


def smooth_square_plus_one_scan(B, limit):
    """Oracle: enumerate every product of allowed primes up to limit^2 + 1
    and keep those of the form n^2 + 1.  Touches no Pell machinery."""
    ps = stormer.allowed_primes(B)
    cap = limit * limit + 1
    hits = set()

    def rec(i, val):
        if i == len(ps):
            r = arith.isqrt(val - 1)
            if r >= 1 and r * r == val - 1:
                hits.add(r)
            return
        v = val
        while v <= cap:
            rec(i + 1, v)
            v *= ps[i]

    rec(0, 1)
    return sorted(hits)


def pair_power(x1, y1, D, k):
    """(x1 + y1 sqrt(D))^k by square-and-multiply on integer pairs."""
    rx, ry = 1, 0
    bx, by = x1, y1
    while k:
        if k & 1:
            rx, ry = rx * bx + ry * by * D, rx * by + ry * bx
        bx, by = bx * bx + by * by * D, 2 * bx * by
        k >>= 1
    return rx, ry


def test_allowed_primes_examples():
    assert stormer.allowed_primes(6) == [2, 5]
    assert stormer.allowed_primes(3) == [2]
    assert stormer.allowed_primes(14) == [2, 5, 13]
    with pytest.raises(PreconditionViolatedError):
        stormer.allowed_primes(2)


def test_enumerate_D_examples():
    assert stormer.enumerate_D(6) == [2, 5, 10]
    assert stormer.enumerate_D(3) == [2]
    assert stormer.enumerate_D(14) == [2, 5, 10, 13, 26, 65, 130]
    with pytest.raises(CapExceededError):
        stormer.enumerate_D(200)  # 21 admissible primes below 200


def test_negative_pell_fundamentals():
    assert stormer.negative_pell_fundamental(2) == (1, 1)
    assert stormer.negative_pell_fundamental(5) == (2, 1)
    assert stormer.negative_pell_fundamental(13) == (18, 5)
    assert stormer.negative_pell_fundamental(3) is None
    assert stormer.negative_pell_fundamental(34) is None  # even period
    x, y = stormer.negative_pell_fundamental(29)
    assert x * x - 29 * y * y == -1


def test_pell_chain_examples():
    chain = stormer.pell_solutions_odd(2, (1, 1), 5)
    assert [(s.x, s.y) for s in chain] == [(1, 1), (7, 5), (41, 29)]
    chain5 = stormer.pell_solutions_odd(5, (2, 1), 3)
    assert [(s.x, s.y) for s in chain5] == [(2, 1), (38, 17)]
    for s in chain + chain5:
        assert s.x * s.x - s.D * s.y * s.y == -1


def test_chain_matches_direct_powers():
    for D in (2, 5, 10, 13, 26, 130):
        fund = stormer.negative_pell_fundamental(D)
        if fund is None:
            continue
        for sol in stormer.pell_solutions_odd(D, fund, 9):
            assert (sol.x, sol.y) == pair_power(fund[0], fund[1], D, sol.k)
            # recurrence step: x_{k+2} = x_k (2 x1^2 + 1) + 2 x1 y1 D y_k
            x_next = sol.x * (2 * fund[0] ** 2 + 1) + 2 * fund[0] * fund[1] * D * sol.y
            assert x_next == pair_power(fund[0], fund[1], D, sol.k + 2)[0]


def test_is_smooth():
    assert stormer.is_smooth(50, 6)
    assert not stormer.is_smooth(325, 6)
    assert stormer.is_smooth(1, 3)
    assert stormer.is_smooth(2 ** 40, 3)
    assert not stormer.is_smooth(2 ** 40 * 3, 3)


def test_stormer_search_expected_sets():
    assert stormer.stormer_search(3).solutions == [1]
    assert stormer.stormer_search(6).solutions == [1, 2, 3, 7]
    assert stormer.stormer_search(14).solutions == [1, 2, 3, 5, 7, 8, 18, 57, 239]


def test_stormer_search_matches_enumeration_oracle():
    for B in (3, 6, 14, 42):
        res = stormer.stormer_search(B)
        oracle = smooth_square_plus_one_scan(B, 10 ** 7)
        in_range = [n for n in res.solutions if n <= 10 ** 7]
        assert in_range == oracle, B
        assert res.max_n == max(res.solutions)
        # nothing found beyond the scan horizon at these bounds
        assert res.solutions == in_range, B


def test_every_solution_verifies_smooth_and_reconstructs():
    res = stormer.stormer_search(14)
    Ds = set(stormer.enumerate_D(14))
    for n in res.solutions:
        assert stormer.is_smooth(n * n + 1, 14)
        sqfree = 1
        for p, e in naive_factorize(n * n + 1):
            if e % 2 == 1:
                sqfree *= p
        assert sqfree in Ds, n


def test_small_digit_cap_flags_truncation():
    # D = 2 fundamental is tiny but the chain overflows one digit fast
    res = stormer.stormer_search(6, k_max_override=13, digit_cap=1)
    assert res.truncated_Ds
    assert 1 in res.solutions  # x_1 = 1 still fits


@pytest.mark.slow
def test_stormer_B101_reproduces_published_maximum():
    res = stormer.stormer_search(101)
    assert res.max_n == 24208144
    assert len(res.solutions) == 156
    assert stormer.is_smooth(24208144 ** 2 + 1, 101)
