"""Polynomial arithmetic over prime fields and factorization shapes.

Only the multiset of irreducible-factor degrees is ever computed (the
distinct-degree stage of factorization); splitting equal-degree factors
further is never needed because the degree multiset already equals the cycle
type of the Frobenius acting on the roots, by Dedekind's theorem.
"""
from __future__ import annotations

import dataclasses

from . import primes
from .zpoly import IntPoly

# Large enough for any desk-scale scan; products of two residues then fit
# comfortably in 128-bit intermediates on any backend.
PRIME_LIMIT = 1 << 61


@dataclasses.dataclass(frozen=True)
class ModPoly:
    """Dense polynomial over F_p; residues reduced, trailing zeros stripped."""

    p: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % self.p
        return acc


@dataclasses.dataclass(frozen=True)
class FactorPattern:
    """Sorted multiset of degrees of the irreducible factors mod p."""

    degrees: tuple[int, ...]
    p: int

    def has_fixed_point(self) -> bool:
        return 1 in self.degrees

    def __iter__(self):
        return iter(self.degrees)


def _check_prime(p: int) -> None:
    if p >= PRIME_LIMIT:
        raise ValueError(f"prime {p} exceeds the supported limit 2^61")
    if not primes.is_prime(p):
        raise ValueError(f"{p} is not prime")


def reduce(poly: IntPoly, p: int) -> ModPoly:
    """Coefficientwise reduction mod p; the degree may drop."""
    _check_prime(p)
    return ModPoly(p, _strip(tuple(c % p for c in poly.coeffs)))


def _strip(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


def _mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(tuple(c % p for c in out))


def _rem(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a by b over F_p (b nonzero)."""
    r = [c % p for c in a]
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for i in range(len(r) - 1 - db, -1, -1):
        top = r[i + db] % p
        if top == 0:
            continue
        c = top * inv % p
        for j, bc in enumerate(b):
            r[i + j] = (r[i + j] - c * bc) % p
    return _strip(tuple(r[:db]))


def _divmod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r = [c % p for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return (), _strip(tuple(r))
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        top = r[i + db] % p
        if top == 0:
            continue
        c = top * inv % p
        q[i] = c
        for j, bc in enumerate(b):
            r[i + j] = (r[i + j] - c * bc) % p
    return _strip(tuple(q)), _strip(tuple(r[:db]))


def _gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Monic gcd over F_p."""
    while b:
        a, b = b, _rem(a, b, p)
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple(c * inv % p for c in a)


def _monic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple(c * inv % p for c in a)


def _derivative(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return _strip(tuple(i * c % p for i, c in enumerate(a) if i > 0))


def _pow_mod(base: tuple[int, ...], e: int, mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """base^e reduced mod the polynomial `mod`, over F_p."""
    result: tuple[int, ...] = (1,)
    base = _rem(base, mod, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), mod, p)
        base = _rem(_mul(base, base, p), mod, p)
        e >>= 1
    return result


def root_count(q: ModPoly) -> int:
    """Number of distinct roots of q in F_p.

    Computed as deg gcd(X^p - X mod q, q) without enumerating residues.
    """
    if q.is_zero():
        raise ValueError("root count of the zero polynomial is undefined")
    p = q.p
    if q.degree < 1:
        return 0
    xp = _pow_mod((0, 1), p, q.coeffs, p)
    # X^p - X
    probe = list(xp) + [0] * max(0, 2 - len(xp))
    probe[1] = (probe[1] - 1) % p
    g = _gcd(q.coeffs, _strip(tuple(probe)), p)
    return len(g) - 1 if g else q.degree


def distinct_degree_pattern(q: ModPoly) -> FactorPattern:
    """Multiset of degrees of the irreducible factors of a squarefree q.

    Uses distinct-degree factorization: at stage d the product of all
    irreducible factors of degree exactly d is split off as
    gcd(X^(p^d) - X, remaining), and contributes (deg / d) entries d.
    X^(p^d) is reached by d successive X -> X^p Frobenius steps, so each
    modular exponentiation has exponent p.
    """
    if q.degree < 1:
        raise ValueError("pattern of a constant polynomial is undefined")
    p = q.p
    if not _is_squarefree(q):
        raise ValueError("distinct-degree pattern requires a squarefree polynomial mod p")
    rem = _monic(q.coeffs, p)
    degrees: list[int] = []
    h: tuple[int, ...] = (0, 1)  # X^(p^d) mod rem, built incrementally
    d = 0
    while len(rem) - 1 > 0:
        d += 1
        if 2 * d > len(rem) - 1:
            degrees.append(len(rem) - 1)  # what is left is irreducible
            break
        h = _pow_mod(h, p, rem, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _gcd(rem, _strip(tuple(diff)), p)
        if len(g) - 1 > 0:
            degrees.extend([d] * ((len(g) - 1) // d))
            quotient, r = _divmod(rem, g, p)
            if r:
                raise AssertionError("distinct-degree split must be exact")
            rem = _monic(quotient, p)
            h = _rem(h, rem, p)
    return FactorPattern(degrees=tuple(sorted(degrees)), p=p)


def _is_squarefree(q: ModPoly) -> bool:
    g = _gcd(q.coeffs, _derivative(q.coeffs, q.p), q.p)
    return len(g) - 1 == 0


def is_irreducible_mod_p(q: ModPoly) -> bool:
    """True iff q is irreducible over F_p (degree >= 1 required)."""
    if q.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if not _is_squarefree(q):
        return False
    return distinct_degree_pattern(q).degrees == (q.degree,)
