"""Function-field side of the toolkit: branch points of E = Q(T)(P(T)^(1/n)),
specialization classes, the reduction to the squarefree-adjusted exponent,
and witnesses that the extension misses some quadratic specialization.

Over the rationals only the second roots of unity are available, so the
field-theoretic conclusions (Galois group Z/n'Z, non-parametricity) are
confined to reduced exponent n' = 2; for larger n' the same twist
certificates are still produced but flagged as curve-level statements only.
"""
from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import galois_cert, twist_forge
from .errors import HypothesisError, InvariantError
from .galois_cert import DEFAULT_CERT_BOUND
from .primes import factorize
from .prime_sieve import CertifiedS
from .twist_forge import TwistCertificate
from .zpoly import IntPoly, is_separable, multiplicity_bound_ok, radical, squarefree_decomposition

CLASS_SIZE_LIMIT = 1 << 128

STATUS_YES = "yes"
STATUS_CERTIFIED_NO = "certified-no"
STATUS_UNKNOWN = "unknown"

RationalLike = Union[int, Fraction]


@dataclasses.dataclass(frozen=True)
class ReducedKummerData:
    """Shared exponent e of n with the multiplicities, and the polynomial
    whose n'-th root generates the same function field."""

    e: int
    n_prime: int
    reduced_multiplicities: tuple[int, ...]
    p0: IntPoly
    content: int


@dataclasses.dataclass(frozen=True)
class SpecializationClass:
    """Canonical n-th-power-free integer representing P(t0) modulo n-th
    powers of rationals; for n = 2 the signed squarefree integer."""

    n: int
    rep: int


@dataclasses.dataclass(frozen=True)
class ParametricityWitness:
    """d with valuation 1 at a certified prime, plus emptiness certificates
    for every coprime power twist; proves the degree-n'' radical extension
    of d is not a specialization."""

    d: int
    subgroup_order: int
    chain: tuple[TwistCertificate, ...]
    field_theoretic: bool


@dataclasses.dataclass(frozen=True)
class SpecializationAnswer:
    status: str
    t0: Fraction | None = None
    at_infinity: bool = False
    witness: ParametricityWitness | None = None


def branch_points_count(poly: IntPoly, n: int) -> tuple[int, bool]:
    """Number of branch points of Q(T)(P^(1/n))/Q(T), and whether infinity
    ramifies (it never does under the hypotheses checked here)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    mults = squarefree_decomposition(poly).multiplicities()
    if any(m > n - 1 for m in mults):
        raise HypothesisError("hyp-2", f"a root has multiplicity >= {n}")
    if math.gcd(n, *mults) != 1:
        raise HypothesisError(
            "hyp-5", "n shares a factor with every multiplicity; reduce the exponent first"
        )
    return radical(poly).degree, False


def reduce_kummer(poly: IntPoly, n: int) -> ReducedKummerData:
    """Strip the common factor e = gcd(n, multiplicities): the n-th root of P
    generates the same field as the (n/e)-th root of P_0 = prod A_i^(i/e)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    decomp = squarefree_decomposition(poly)
    mults = decomp.multiplicities()
    if any(m > n - 1 for m in mults):
        raise HypothesisError("hyp-2", f"a root has multiplicity >= {n}")
    e = math.gcd(n, *mults)
    p0 = IntPoly(1)
    reduced = []
    for part, m in decomp.parts:
        p0 = p0 * part ** (m // e)
        reduced.append(m // e)
    return ReducedKummerData(
        e=e,
        n_prime=n // e,
        reduced_multiplicities=tuple(reduced),
        p0=p0,
        content=decomp.content,
    )


def _nth_power_free(r: int, n: int) -> int:
    """Canonical representative of r modulo n-th powers of rationals."""
    if r == 0:
        raise ValueError("0 has no power-free representative")
    if n % 2 == 0 and n != 2:
        raise ValueError(f"classes modulo {n}-th powers are not computed over the rationals")
    rep = 1
    for p, exp in factorize(r).items():
        rep *= p ** (exp % n)
    if n == 2 and r < 0:
        rep = -rep
    return rep


def specialize(poly: IntPoly, n: int, t0: RationalLike) -> SpecializationClass:
    """Class of P(t0) modulo n-th powers; t0 must avoid the roots of P."""
    if n < 2:
        raise ValueError("n must be >= 2")
    t0 = Fraction(t0)
    value = poly(t0)
    if value == 0:
        raise ValueError(f"{t0} is a branch point (root of the polynomial)")
    rep = _class_rep(poly.coeffs, n, t0)
    return SpecializationClass(n=n, rep=rep)


@lru_cache(maxsize=1 << 18)
def _class_rep(coeffs: tuple[int, ...], n: int, t0: Fraction) -> int:
    value = IntPoly(*coeffs)(t0)
    value = Fraction(value)
    r = value.numerator * value.denominator ** (n - 1)
    rep = _nth_power_free(r, n)
    if abs(rep) > CLASS_SIZE_LIMIT:
        raise ValueError("class representative exceeds 2^128")
    return rep


def specialize_infinity(poly: IntPoly, n: int) -> SpecializationClass:
    """Class of the specialization at infinity: the leading coefficient."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    return SpecializationClass(n=n, rep=_nth_power_free(poly.lc, n))


def rationals_by_height(bound: int):
    """Rationals of height (max of |numerator| and denominator) up to bound,
    by increasing height, then |numerator|, positives first, then denominator."""
    for h in range(1, bound + 1):
        batch = []
        for b in range(1, h + 1):
            for a in range(-h, h + 1):
                if max(abs(a), b) == h and math.gcd(a, b) == 1:
                    batch.append(Fraction(a, b))
        batch.sort(key=lambda q: (abs(q.numerator), q.numerator < 0, q.denominator))
        yield from batch


def is_specialization(
    poly: IntPoly, d: int, search_bound: int, s: CertifiedS
) -> SpecializationAnswer:
    """Does Q(sqrt(d)) arise as a specialization of Q(T)(sqrt(P))?

    Yes with the first matching t0 (smallest height, deterministic order) or
    at infinity; CertifiedNo with a witness when the d-th twist is provably
    empty; Unknown otherwise.  Fixed to square roots: the rationals contain
    no higher roots of unity.
    """
    if poly.degree % 2 != 0:
        raise HypothesisError("hyp-1", "the degree must be even")
    if not is_separable(poly):
        raise HypothesisError("hyp-2", "the polynomial must be separable")
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if _nth_power_free(d, 2) != d:
        raise ValueError(f"{d} is not squarefree; canonicalize it first")
    for t0 in rationals_by_height(search_bound):
        if poly(t0) == 0:
            continue
        if _class_rep(poly.coeffs, 2, t0) == d:
            return SpecializationAnswer(status=STATUS_YES, t0=t0)
    if specialize_infinity(poly, 2).rep == d:
        return SpecializationAnswer(status=STATUS_YES, at_infinity=True)
    cert = twist_forge.certify_no_points(poly, 2, d, s)
    if cert is not None:
        witness = ParametricityWitness(
            d=d, subgroup_order=2, chain=(cert,), field_theoretic=True
        )
        return SpecializationAnswer(status=STATUS_CERTIFIED_NO, witness=witness)
    return SpecializationAnswer(status=STATUS_UNKNOWN)


def nonparametric_witnesses(
    poly: IntPoly,
    n: int,
    count: int,
    s: CertifiedS,
    cert_bound: int = DEFAULT_CERT_BOUND,
) -> list[ParametricityWitness]:
    """Witnesses that radical extensions of certified primes never appear as
    specializations of Q(T)(P^(1/n)).

    Hypotheses are checked in order and reported by their tag: (hyp-1) the
    exponent divides the degree, (hyp-2) multiplicities stay below n,
    (hyp-3) the reduced exponent must be 2 for the field-theoretic reading
    (witnesses are still produced otherwise, flagged curve-level only),
    (hyp-4) a fixed-point-free certificate must exist.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    if not multiplicity_bound_ok(poly, n):
        raise HypothesisError("hyp-2", f"a root has multiplicity >= {n}")
    red = reduce_kummer(poly, n)
    if red.n_prime < 2:
        raise HypothesisError(
            "hyp-3", "the reduced exponent is 1: the extension is trivial"
        )
    field_theoretic = red.n_prime == 2
    roots = galois_cert.rational_roots(poly)
    if roots:
        raise HypothesisError(
            "hyp-4", f"rational root {roots[0]} fixes a point for every Galois element"
        )
    if galois_cert.certify_condition_H(poly, cert_bound) is None:
        raise HypothesisError(
            "hyp-4", f"no fixed-point-free certificate below {cert_bound} (inconclusive)"
        )
    if s.polynomial != red.p0:
        raise ValueError("certified prime set must be built from the reduced polynomial")
    coprime_powers = [m for m in range(1, red.n_prime) if math.gcd(m, red.n_prime) == 1]
    witnesses = []
    for p in s.primes[:count]:
        chain = []
        for m in coprime_powers:
            cert = twist_forge.certify_no_points(red.p0, red.n_prime, p**m, s)
            if cert is None:
                raise InvariantError(f"certificate for {p}^{m} unexpectedly missing")
            chain.append(cert)
        witnesses.append(
            ParametricityWitness(
                d=p,
                subgroup_order=red.n_prime,
                chain=tuple(chain),
                field_theoretic=field_theoretic,
            )
        )
    return witnesses
