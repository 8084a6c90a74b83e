"""Small integer helpers: the numbers involved never exceed a few thousand."""

from __future__ import annotations

import functools
import math


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, ``{p: e}`` with primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_dividing(n: int) -> list[int]:
    return list(factorize(n))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def odd_part(n: int) -> int:
    return n // p_part(n, 2)


def is_power_of(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


def coprime(m: int, n: int) -> bool:
    return math.gcd(m, n) == 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@functools.lru_cache(maxsize=65536)
def multiplicative_order(u: int, a: int) -> int:
    """Order of ``u`` in ``(Z/a)*``; ``a == 1`` gives 1."""
    if a == 1:
        return 1
    if math.gcd(u, a) != 1:
        raise ValueError(f"{u} is not a unit mod {a}")
    k, x = 1, u % a
    while x != 1:
        x = x * u % a
        k += 1
    return k
