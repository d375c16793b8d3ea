"""Exact integer number theory used throughout the package.

Valuations of zero are reported as ``INF`` (``math.inf``) so that polygon code
can tell an absent coefficient apart from a unit.
"""

from __future__ import annotations

import math
from functools import lru_cache

INF = math.inf

#: Largest prime accepted by :func:`is_prime`; everything the theorems touch
#: satisfies ``p < n``, so this only has to cover desk-scale degrees.
PRIME_BOUND = 10**6


class DeskScaleError(ValueError):
    """Raised when an input lies outside the range handled by trial division."""


def is_prime(n: int, bound: int = PRIME_BOUND) -> bool:
    if n > bound:
        raise DeskScaleError(f"prime candidate {n} exceeds desk-scale bound {bound}")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def primes_below(n: int) -> list[int]:
    """All primes ``q`` with ``2 <= q < n``."""
    if n <= 2:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def vp(t: int, p: int) -> int | float:
    """p-adic valuation of ``t``; ``INF`` for ``t == 0``."""
    require_prime(p)
    if t == 0:
        return INF
    t = abs(t)
    k = 0
    # strip large powers first; matters for coefficients with thousands of digits
    step, pk = 1, p
    while t % pk == 0:
        t //= pk
        k += step
        step, pk = step * 2, pk * pk
    while t % p == 0:
        t //= p
        k += 1
    return k


def unit_part(t: int, p: int) -> int:
    """``t / p**vp(t, p)``; keeps the sign of ``t``."""
    if t == 0:
        raise ValueError("unit part of 0 is undefined")
    return t // p ** vp(t, p)


def binom_vp(p: int, r: int, j: int) -> int:
    """Valuation of ``C(p**r, j)`` for ``1 <= j <= p**r - 1``, i.e. ``r - vp(j)``."""
    require_prime(p)
    if r < 1:
        raise ValueError("r must be positive")
    if not 1 <= j <= p**r - 1:
        raise ValueError(f"j={j} outside [1, {p}^{r} - 1]")
    return r - vp(j, p)


def lifted_val(b: int, p: int, r: int = 1) -> int | float:
    """``vp(b**(p-1) - 1)``, which equals ``vp(b + (-b)**(p**r))`` for odd ``p``.

    Evaluated by modular exponentiation at growing prime powers; returns
    ``INF`` when ``b**(p-1) == 1`` exactly (``b = +-1``).
    """
    require_prime(p)
    if p == 2:
        raise ValueError("lifted_val is only defined for odd primes")
    if r < 1:
        raise ValueError("r must be positive")
    if b % p == 0:
        raise ValueError(f"{p} divides b={b}")
    if b in (1, -1):
        return INF
    k = 0
    modulus = p
    while pow(b, p - 1, modulus) == 1:
        k += 1
        modulus *= p
    return k


def factorize(n: int, bound: int = PRIME_BOUND) -> dict[int, int]:
    """Trial-division factorization of ``|n|``; cofactor above ``bound**2`` is rejected."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        if q > bound:
            raise DeskScaleError(f"{n} has no factor below {bound}")
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Positive divisors of ``|n|`` in increasing order."""
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    for e in factorize(n).values():
        if e > 1:
            return 0
        result = -result
    return result


@lru_cache(maxsize=None)
def count_monic_irreducible(p: int, m: int) -> int:
    """Number of monic irreducible polynomials of degree ``m`` over F_p."""
    require_prime(p)
    if m < 1:
        raise ValueError("degree must be positive")
    total = sum(mobius(d) * p ** (m // d) for d in divisors(m))
    assert total % m == 0
    return total // m
