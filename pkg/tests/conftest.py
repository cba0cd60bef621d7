"""Shared independent oracles: naive routines that use nothing from the
package's fast paths, only schoolbook arithmetic."""

import pytest


def naive_factorize(m):
    """Trial division by every integer; the slowest possible oracle."""
    assert m >= 1
    out = []
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def naive_p_plus(m):
    assert m > 1
    return naive_factorize(m)[-1][0]


def naive_is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def naive_prime_set(m):
    return {p for p, _ in naive_factorize(m)} if m > 1 else set()


@pytest.fixture(scope="session")
def small_primes():
    return [p for p in range(2, 10001) if naive_is_prime(p)]
