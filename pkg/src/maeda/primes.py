"""Prime sieving and deterministic primality testing."""

from __future__ import annotations

import functools

# Witnesses proving primality for every n < 3.3 * 10^24 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@functools.lru_cache(maxsize=8)
def sieve_primes(bound: int) -> tuple[int, ...]:
    """All primes strictly below ``bound``, ascending."""
    if bound <= 2:
        return ()
    flags = bytearray([1]) * bound
    flags[0] = flags[1] = 0
    for p in range(2, int(bound**0.5) + 1):
        if flags[p]:
            start = p * p
            flags[start::p] = bytes(len(range(start, bound, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_count(bound: int) -> int:
    """Number of primes strictly below ``bound``."""
    return len(sieve_primes(bound))
