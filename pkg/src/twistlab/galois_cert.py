"""Certify that the Galois group of a polynomial has a fixed-point-free
element, and estimate the Chebotarev density of non-divisor primes.

The certificate is a single witness prime: if P mod p is squarefree with no
linear factor (and p divides neither the discriminant nor the leading
coefficient of the radical), Dedekind's theorem exhibits a Frobenius element
whose cycle type has no fixed point.  One good prime is a rigorous proof;
absence of a witness below the scan bound is only ever reported as
inconclusive, never as a refutation.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction

from . import modp, primes, prime_sieve
from .errors import HypothesisError
from .modp import FactorPattern
from .zpoly import (
    IntPoly,
    compose_power,
    content_and_primitive,
    discriminant,
    radical,
)

DEFAULT_CERT_BOUND = 10_000
DEFAULT_DENSITY_BOUND = 100_000


@dataclasses.dataclass(frozen=True)
class ConditionHCertificate:
    """Witness prime whose factor pattern has no part of size 1."""

    witness_prime: int
    pattern: FactorPattern
    radical_degree: int


@dataclasses.dataclass(frozen=True)
class DensityEstimate:
    prime_bound: int
    primes_examined: int
    non_divisor_count: int
    excluded_count: int

    @property
    def estimate(self) -> float:
        usable = self.primes_examined - self.excluded_count
        return self.non_divisor_count / usable if usable else 0.0


def certify_condition_H(poly: IntPoly, bound: int = DEFAULT_CERT_BOUND) -> ConditionHCertificate | None:
    """First prime p <= bound whose pattern for the radical has no 1.

    Primes dividing content(P), disc(radical) or lc(radical) are skipped.
    Returns None when no witness exists below the bound (inconclusive).
    """
    if bound < 2:
        raise ValueError("prime bound must be at least 2")
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    content, _ = content_and_primitive(poly)
    rad = radical(poly)
    skip = abs(content * discriminant(rad) * rad.lc)
    for p in primes.primes_upto(bound):
        if skip % p == 0:
            continue
        pattern = modp.distinct_degree_pattern(modp.reduce(rad, p))
        if not pattern.has_fixed_point():
            return ConditionHCertificate(
                witness_prime=p, pattern=pattern, radical_degree=rad.degree
            )
    return None


def estimate_delta(poly: IntPoly, bound: int = DEFAULT_DENSITY_BOUND) -> DensityEstimate:
    """Fraction of non-excluded primes <= bound that are non-divisors.

    By the Chebotarev density theorem this converges to the proportion of
    Galois elements fixing no root of P.
    """
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    examined = excluded = non_divisor = 0
    for p in primes.primes_upto(bound):
        examined += 1
        verdict = prime_sieve.classify_verdict(poly, p)
        if verdict == prime_sieve.EXCLUDED:
            excluded += 1
        elif verdict == prime_sieve.NON_DIVISOR:
            non_divisor += 1
    return DensityEstimate(
        prime_bound=bound,
        primes_examined=examined,
        non_divisor_count=non_divisor,
        excluded_count=excluded,
    )


def check_N_cycle(poly: IntPoly, bound: int = DEFAULT_CERT_BOUND) -> int | None:
    """Least prime p <= bound (p not dividing disc * lc) where P stays
    irreducible mod p.

    Such a prime shows the Galois group contains a full-length cycle and, in
    particular, that P is irreducible over the rationals.
    """
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    disc = discriminant(poly)
    if disc == 0:
        raise ValueError("polynomial must be separable")
    skip = abs(disc * poly.lc)
    n = poly.degree
    for p in primes.primes_upto(bound):
        if skip % p == 0:
            continue
        if modp.distinct_degree_pattern(modp.reduce(poly, p)).degrees == (n,):
            return p
    return None


def rational_roots(poly: IntPoly) -> list[Fraction]:
    """All rational roots, by testing divisor pairs of a_0 and a_N exactly."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has every root")
    coeffs = list(poly.coeffs)
    roots: list[Fraction] = []
    shift = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    stripped = IntPoly(*coeffs)
    if stripped.degree < 1:
        return sorted(roots)
    for num in primes.divisors(stripped.coeffs[0]):
        for den in primes.divisors(stripped.lc):
            for candidate in (Fraction(num, den), Fraction(-num, den)):
                if candidate not in roots and stripped(candidate) == 0:
                    roots.append(candidate)
    return sorted(roots)


def scan_power_compositions(
    poly: IntPoly, k_max: int, bound: int = DEFAULT_CERT_BOUND
) -> list[tuple[int, ConditionHCertificate]]:
    """All k <= k_max for which P(T^k) earns a fixed-point-free certificate.

    Requires P monic with P(0) != 0 and P(1) != 0; both are necessary for
    the infinitude of such k.
    """
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    if poly.lc != 1:
        raise HypothesisError("monic", "polynomial must be monic")
    if poly(0) == 0:
        raise HypothesisError("nonzero-at-0", "0 is a root of the polynomial")
    if poly(1) == 0:
        raise HypothesisError("nonzero-at-1", "1 is a root of the polynomial")
    found = []
    for k in range(1, k_max + 1):
        cert = certify_condition_H(compose_power(poly, k), bound)
        if cert is not None:
            found.append((k, cert))
    return found
