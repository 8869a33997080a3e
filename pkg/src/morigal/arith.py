"""Integer arithmetic helpers: primality, factorization with an effort budget."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt

# Deterministic for n < 3.3e24, which covers everything below 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_RANDOM_ROUNDS = 64
_DETERMINISTIC_LIMIT = 1 << 64

TRIAL_BOUND = 10**6
POLLARD_ITERATIONS = 200_000


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIME_CACHE: dict[int, list[int]] = {}


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    if bound not in _PRIME_CACHE:
        _PRIME_CACHE[bound] = _small_primes(bound)
    return _PRIME_CACHE[bound]


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin; deterministic below 2**64, 64 seeded random rounds above."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, d, s, a) for a in _MR_WITNESSES):
        return False
    if n < _DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(seed ^ n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(_MR_RANDOM_ROUNDS))


def is_proven_prime(n: int) -> bool:
    """True when `is_prime` is a deterministic answer for n."""
    return n < _DETERMINISTIC_LIMIT


def next_prime(n: int) -> int:
    n = max(n + 1, 2)
    while not is_prime(n):
        n += 1
    return n


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def pollard_brent(n: int, max_iterations: int, seed: int = 0) -> int | None:
    """Return a nontrivial factor of composite odd n, or None when the budget runs out."""
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    spent = 0
    while spent < max_iterations:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            # Backtrack one step at a time from the saved state.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


@dataclass
class Factorization:
    """Partial factorization: n == sign * prod(p**e) * cofactor."""

    n: int
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1
    probable: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.factors.items())


def factorize(
    n: int,
    trial_bound: int = TRIAL_BOUND,
    pollard_iterations: int = POLLARD_ITERATIONS,
    seed: int = 0,
) -> Factorization:
    """Factor |n| by trial division up to `trial_bound`, then Pollard-Brent.

    Composite pieces that resist Pollard-Brent within `pollard_iterations`
    are multiplied into `cofactor` instead of raising.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    result = Factorization(n)
    m = abs(n)
    for p in primes_up_to(trial_bound):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result.factors[p] = e
    if m == 1:
        return result
    if m <= trial_bound * trial_bound:
        result.factors[m] = result.factors.get(m, 0) + 1
        return result

    stack = [m]
    while stack:
        k = stack.pop()
        if k == 1:
            continue
        if is_prime(k, seed):
            result.factors[k] = result.factors.get(k, 0) + 1
            if not is_proven_prime(k):
                result.probable.append(k)
            continue
        r = isqrt(k)
        if r * r == k:
            stack += [r, r]
            continue
        d = pollard_brent(k, pollard_iterations, seed)
        if d is None:
            result.cofactor *= k
        else:
            stack += [d, k // d]
    return result


def divisors_prime(n: int) -> list[int]:
    """Distinct prime divisors of |n| (complete factorization required)."""
    fac = factorize(n, pollard_iterations=10**7)
    if not fac.complete:
        raise ArithmeticError(f"could not factor {n}")
    return sorted(fac.factors)
