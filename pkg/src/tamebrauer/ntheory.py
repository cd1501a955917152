"""Small integer helpers shared by the field modules."""

from functools import lru_cache
from math import gcd

from .errors import NotPrime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


@lru_cache(maxsize=None)
def prime_factors(n):
    """Sorted distinct prime factors of n >= 1 (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def multiplicative_order(a, n):
    """Order of a in (Z/n)^x; 1 when n == 1."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    # order divides phi(n); compute phi then strip factors
    phi = n
    for q in prime_factors(n):
        phi -= phi // q
    order = phi
    for q in prime_factors(phi):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def prime_power(q):
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, k = fs[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p, as -1, 0 or 1."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r
