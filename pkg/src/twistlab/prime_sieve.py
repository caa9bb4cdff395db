"""Classify primes as prime divisors / non-divisors of an integer polynomial.

A prime p is a *prime divisor* of P when some rational specialization of P
has positive p-adic valuation.  For p not dividing the leading coefficient
this is equivalent to P having a root mod p; primes dividing the leading
coefficient are conservatively reported as excluded rather than resolved
through negative-valuation specializations, so the certified set only ever
shrinks and every downstream certificate stays sound.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction

from . import modp, primes
from .zpoly import IntPoly, content_and_primitive

DIVISOR = "divisor"
NON_DIVISOR = "non-divisor"
EXCLUDED = "excluded"

REASON_LEADING = "divides-leading-coeff"
REASON_A0 = "divides-a0"
REASON_CONTENT = "divides-content"


@dataclasses.dataclass(frozen=True)
class PrimeClass:
    p: int
    verdict: str
    witness: int | None = None  # smallest residue with P(t) = 0 mod p, for divisors
    reason: str | None = None  # set only for excluded primes


@dataclasses.dataclass(frozen=True)
class CertifiedS:
    """Sorted non-divisor primes p <= bound with p dividing neither a_0 nor a_N."""

    polynomial: IntPoly
    bound: int
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)


def classify_verdict(poly: IntPoly, p: int) -> str:
    """Verdict only (cheap path used by the density scans)."""
    if not primes.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if poly.degree < 1:
        raise ValueError("classification needs a nonconstant polynomial")
    content, _ = content_and_primitive(poly)
    if content % p == 0:
        return DIVISOR
    if poly.lc % p == 0:
        return EXCLUDED
    return DIVISOR if modp.root_count(modp.reduce(poly, p)) > 0 else NON_DIVISOR


def classify(poly: IntPoly, p: int) -> PrimeClass:
    """Full classification of p, including a divisor witness.

    Witnesses are the smallest residue t in [0, p) with P(t) = 0 mod p;
    a prime dividing the content gets witness 0 since every value of P
    is then divisible.
    """
    verdict = classify_verdict(poly, p)
    if verdict == EXCLUDED:
        return PrimeClass(p, EXCLUDED, reason=REASON_LEADING)
    if verdict == NON_DIVISOR:
        return PrimeClass(p, NON_DIVISOR)
    content, _ = content_and_primitive(poly)
    if content % p == 0:
        return PrimeClass(p, DIVISOR, witness=0)
    return PrimeClass(p, DIVISOR, witness=_smallest_root(modp.reduce(poly, p)))


def _smallest_root(q: modp.ModPoly) -> int:
    # A root is guaranteed to exist; the expected smallest one is small.
    for t in range(q.p):
        if q(t) == 0:
            return t
    raise AssertionError("root promised by the gcd computation was not found")


def build_S(poly: IntPoly, bound: int) -> CertifiedS:
    """All non-divisor primes p <= bound with p not dividing a_0 * a_N."""
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    a0 = poly.coeffs[0] if poly.coeffs else 0
    if a0 == 0:
        raise ValueError("constant term is zero: 0 is a rational root, no certified set exists")
    members = [
        p
        for p in primes.primes_upto(bound)
        if a0 % p != 0 and classify_verdict(poly, p) == NON_DIVISOR
    ]
    return CertifiedS(polynomial=poly, bound=bound, primes=tuple(members))


def build_S_from_classifications(
    poly: IntPoly, bound: int, classes: dict[int, PrimeClass]
) -> CertifiedS:
    """Assemble the certified set from precomputed classifications (cache path);
    must agree with build_S on the same inputs."""
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    a0 = poly.coeffs[0] if poly.coeffs else 0
    if a0 == 0:
        raise ValueError("constant term is zero: 0 is a rational root, no certified set exists")
    members = [
        p
        for p in sorted(classes)
        if p <= bound and a0 % p != 0 and classes[p].verdict == NON_DIVISOR
    ]
    return CertifiedS(polynomial=poly, bound=bound, primes=tuple(members))


def density_of_S(s: CertifiedS) -> Fraction:
    """|S| / pi(bound): a diagnostic estimate of the non-divisor density."""
    total = primes.prime_count(s.bound)
    if total == 0:
        return Fraction(0)
    return Fraction(len(s.primes), total)
