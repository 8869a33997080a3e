import random
from math import prod

from hypothesis import given, settings, strategies as st

from morigal.arith import factorize, is_prime, is_square, pollard_brent, primes_up_to, valuation


def trial_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_primality_agrees_with_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if trial_prime(n)]
    assert len(primes_up_to(10**5)) == 9592


def test_carmichael_and_large_primes():
    for n in (561, 1105, 1729, 2465, 2821, 6601, 3215031751, 3825123056546413051):
        assert not is_prime(n)
    for n in (2**61 - 1, 2**89 - 1, 2**127 - 1, 10**18 + 9):
        assert is_prime(n)
    assert not is_prime((2**61 - 1) * (2**89 - 1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 5, 13, 1231, 999983, 1000003, 2147483647]), min_size=1, max_size=5))
def test_factorize_reconstructs(ps):
    n = prod(ps)
    fac = factorize(n)
    assert fac.complete
    assert prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac.factors)


def test_pollard_brent_splits_semiprime():
    n = 1000003 * 2147483647
    d = pollard_brent(n, 200_000, seed=1)
    assert d in (1000003, 2147483647)


def test_budget_exhaustion_keeps_cofactor():
    n = (2**61 - 1) * (2**89 - 1)
    fac = factorize(n * 12, pollard_iterations=10)
    assert fac.factors == {2: 2, 3: 1}
    assert fac.cofactor == n and not fac.complete


def test_valuation_and_squares():
    assert valuation(-589934592, 2) == 12
    assert valuation(144027, 3) == 2
    rng = random.Random(0)
    for _ in range(200):
        k = rng.randint(0, 10**12)
        assert is_square(k * k) and (k == 0 or not is_square(k * k + 1))
    assert not is_square(-4)
