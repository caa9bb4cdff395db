"""Prime sieves, deterministic primality testing and integer factorization.

Everything here is exact and deterministic; factorization uses trial
division backed by Brent's cycle-finding rho for the large cofactors that
desk-scale inputs occasionally produce.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .errors import FactorizationError

# Deterministic Miller-Rabin witnesses for every n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 100_000


@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(flags[p * p :: p]))
    return tuple(i for i in range(limit + 1) if flags[i])


def primes_upto(limit: int) -> tuple[int, ...]:
    """All primes p <= limit, ascending."""
    if limit < 2:
        return ()
    return _sieve(limit)


def prime_count(limit: int) -> int:
    return len(primes_upto(limit))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
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


def mobius_sieve(limit: int) -> list[int]:
    """mu(k) for k = 0..limit (mu(0) set to 0)."""
    mu = [1] * (limit + 1)
    mu[0] = 0
    primality = bytearray([1]) * (limit + 1)
    for p in range(2, limit + 1):
        if not primality[p]:
            continue
        for multiple in range(p, limit + 1, p):
            if multiple > p:
                primality[multiple] = 0
            mu[multiple] = -mu[multiple]
        p2 = p * p
        for multiple in range(p2, limit + 1, p2):
            mu[multiple] = 0
    return mu


def _brent_rho(n: int, budget: int = 1 << 22) -> int:
    """A non-trivial factor of composite n, or raises FactorizationError."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        spent = 0
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationError(f"failed to factor {n} within the effort budget")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in primes_upto(_TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if n < _TRIAL_BOUND * _TRIAL_BOUND:
            # no factor below sqrt(n) survived trial division
            out[n] = out.get(n, 0) + 1
        else:
            _factor_hard(n, out)
    return out


def _factor_hard(n: int, out: dict[int, int]) -> None:
    # n has no factor below the trial bound here.
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    # Perfect powers first: cheap, and rho struggles with them.
    for k in range(2, n.bit_length() + 1):
        root = iroot(n, k)
        if root < 2:
            break
        if root**k == n:
            for p, e in factorize(root).items():
                out[p] = out.get(p, 0) + e * k
            return
    g = _brent_rho(n)
    for part in (g, n // g):
        if is_prime(part):
            out[part] = out.get(part, 0) + 1
        else:
            _factor_hard(part, out)


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0, exact."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2:
        return x
    if k == 1:
        return x
    if k == 2:
        return math.isqrt(x)
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > x:
        r -= 1
    return r


def divisors(n: int) -> list[int]:
    """All positive divisors of |n|, sorted ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)
