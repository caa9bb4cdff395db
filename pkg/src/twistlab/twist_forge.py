"""Twist parameters, machine-checkable emptiness certificates and exhaustive
bounded-height point searches on superelliptic curves Y^n = d * P(T, Z).

A certificate is a triple (d, p, v): a prime p that is not a prime divisor
of P and divides neither a_0 nor a_N, together with v = v_p(d) > 0 not
divisible by n.  The valuation argument then rules out every rational point,
so a certificate is rigorous; its absence is only ever "inconclusive" (the
curve may still be empty for other reasons, e.g. d < 0 with P positive).

Certificates are never derived from searches; searches exist to cross-check
certificates and to exhibit points on twists that do have them.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

from . import prime_sieve
from .errors import HypothesisError, InvariantError
from .primes import iroot, is_prime
from .prime_sieve import CertifiedS
from .zpoly import IntPoly, discriminant, homogenize, hom_eval, multiplicity_bound_ok

SHAPE_PRIME = "prime"
SHAPE_PRIME_TIMES_NTH_POWER = "prime-times-nth-power"
SHAPE_PRIME_POWER = "prime-power"
SHAPES = (SHAPE_PRIME, SHAPE_PRIME_TIMES_NTH_POWER, SHAPE_PRIME_POWER)

DEFAULT_SEARCH_BOUND = 500

# int64-exactness ceiling for the vectorized quadratic search path
_FAST_LIMIT = 1 << 61


def valuation(p: int, x: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def integer_nth_root(x: int, n: int) -> int | None:
    """The exact integer r with r^n = x, or None if x is not an n-th power.

    Negative x is allowed for odd n; for even n a negative x simply has no
    root (None, not an error).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if x < 0:
        if n % 2 == 0:
            return None
        r = iroot(-x, n)
        return -r if r**n == -x else None
    r = iroot(x, n)
    return r if r**n == x else None


@dataclasses.dataclass(frozen=True)
class TwistCertificate:
    """Proof that Y^n = d * P(T,Z) has no rational point."""

    polynomial: IntPoly
    n: int
    d: int
    witness_prime: int
    valuation: int


@dataclasses.dataclass(frozen=True)
class WPoint:
    """Point [y : t : z] in the weighted projective space, normalized so
    that (t, z) are coprime, z >= 0, and z = 0 only as (t, z) = (1, 0)."""

    y: int
    t: int
    z: int

    def on_curve(self, poly: IntPoly, n: int, d: int) -> bool:
        return self.y**n == d * hom_eval(homogenize(poly), self.t, self.z)


@dataclasses.dataclass(frozen=True)
class SearchReport:
    d: int
    height_bound: int
    points: tuple[WPoint, ...]
    exhaustive: bool


def make_twists(s: CertifiedS, n: int, count: int, shape: str = SHAPE_PRIME) -> list[int]:
    """Twist parameters built from the certified primes, valid by construction.

    prime: d = p; prime-times-nth-power: d = p * 2^n (same valuation class);
    prime-power: d = p^(n+1), whose valuation n+1 is never divisible by n.
    """
    if not s.primes:
        raise ValueError("the certified prime set is empty")
    if shape not in SHAPES:
        raise ValueError(f"unknown twist shape {shape!r}")
    chosen = s.primes[:count]
    if shape == SHAPE_PRIME:
        return [p for p in chosen]
    if shape == SHAPE_PRIME_TIMES_NTH_POWER:
        return [p * 2**n for p in chosen]
    return [p ** (n + 1) for p in chosen]


def _check_twist_hypotheses(poly: IntPoly, n: int) -> None:
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.degree < 1:
        raise ValueError("needs a nonconstant polynomial")
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"n divides N fails: {n} does not divide {poly.degree}")
    if not multiplicity_bound_ok(poly, n):
        raise HypothesisError(
            "hyp-2", f"multiplicity at most n-1 fails: a root has multiplicity >= {n}"
        )


def certify_no_points(poly: IntPoly, n: int, d: int, s: CertifiedS) -> TwistCertificate | None:
    """Certificate that the d-th twist has no rational point, or None.

    Scans the certified set for a prime with v_p(d) > 0 and n not dividing
    v_p(d).  None means inconclusive, never "points exist".
    """
    _check_twist_hypotheses(poly, n)
    if d == 0:
        raise ValueError("d must be nonzero")
    if s.polynomial != poly:
        raise ValueError("certified prime set belongs to a different polynomial")
    for p in s.primes:
        if d % p == 0:
            v = valuation(p, d)
            if v % n != 0:
                return TwistCertificate(
                    polynomial=poly, n=n, d=d, witness_prime=p, valuation=v
                )
    return None


def verify_certificate(cert: TwistCertificate) -> list[str]:
    """Re-check every claim of a certificate from scratch.

    Returns a list of failure descriptions; an empty list means the
    certificate is valid.
    """
    failures: list[str] = []
    poly, n, d, p = cert.polynomial, cert.n, cert.d, cert.witness_prime
    if d == 0:
        failures.append("d is zero")
        return failures
    if not is_prime(p):
        failures.append(f"witness {p} is not prime")
        return failures
    if poly.degree % n != 0:
        failures.append(f"{n} does not divide the degree {poly.degree}")
    if not multiplicity_bound_ok(poly, n):
        failures.append(f"a root multiplicity reaches {n}")
    if poly.coeffs[0] % p == 0:
        failures.append(f"{p} divides the constant term")
    if poly.lc % p == 0:
        failures.append(f"{p} divides the leading coefficient")
    elif prime_sieve.classify(poly, p).verdict != prime_sieve.NON_DIVISOR:
        failures.append(f"{p} is a prime divisor of the polynomial")
    v = valuation(p, d)
    if v != cert.valuation:
        failures.append(f"stated valuation {cert.valuation} but v_{p}({d}) = {v}")
    if v <= 0:
        failures.append(f"v_{p}({d}) is not positive")
    if v % n == 0:
        failures.append(f"{n} divides v_{p}({d}) = {v}")
    return failures


# ---------------------------------------------------------------------------
# exhaustive bounded search


def search_points(
    poly: IntPoly, n: int, d: int, height_bound: int = DEFAULT_SEARCH_BOUND
) -> SearchReport:
    """Enumerate every weighted-projective class of height up to the bound.

    Coprime pairs (t, z) with |t| <= B, 0 <= z <= B are tested (z = 0 only
    as the point at infinity (1, 0)); a class lies on the twist exactly when
    d * P(t, z) is an n-th power.  All arithmetic is exact.
    """
    reports = search_points_many(poly, n, [d], height_bound)
    return reports[d]


def search_points_many(
    poly: IntPoly, n: int, ds: Sequence[int], height_bound: int
) -> dict[int, SearchReport]:
    """Same search for several twist parameters, sharing the evaluation work."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.degree % n != 0:
        raise HypothesisError("hyp-1", f"{n} does not divide the degree {poly.degree}")
    if any(d == 0 for d in ds):
        raise ValueError("d must be nonzero")
    ds = list(dict.fromkeys(ds))  # drop duplicates, keep order
    bound = height_bound
    form = homogenize(poly)
    points: dict[int, list[WPoint]] = {d: [] for d in ds}

    # the single representative at infinity
    lead = form(1, 0)
    for d in ds:
        y = integer_nth_root(d * lead, n)
        if y is not None:
            points[d].append(WPoint(y=abs(y) if n % 2 == 0 else y, t=1, z=0))

    val_bound = sum(abs(c) for c in poly.coeffs) * bound ** poly.degree
    if n == 2:
        fast_ds = [d for d in ds if abs(d) * val_bound < _FAST_LIMIT]
    else:
        fast_ds = []
    exact_ds = [d for d in ds if d not in fast_ds]
    for z in range(1, bound + 1):
        if fast_ds:
            _search_row_fast(poly, fast_ds, z, bound, points)
        if exact_ds:
            _search_row_exact(form, n, exact_ds, z, bound, points)
    return {
        d: SearchReport(d=d, height_bound=bound, points=tuple(points[d]), exhaustive=True)
        for d in ds
    }


def _search_row_exact(form, n: int, ds: Sequence[int], z: int, bound: int, points) -> None:
    for t in range(-bound, bound + 1):
        if math.gcd(t, z) != 1:
            continue
        val = form(t, z)
        for d in ds:
            y = integer_nth_root(d * val, n)
            if y is not None:
                points[d].append(WPoint(y=abs(y) if n % 2 == 0 else y, t=t, z=z))


def _search_row_fast(poly: IntPoly, ds: Sequence[int], z: int, bound: int, points) -> None:
    """Vectorized quadratic row: exact within the int64 guard enforced above."""
    t = np.arange(-bound, bound + 1, dtype=np.int64)
    t = t[np.gcd(np.abs(t), z) == 1]
    coeffs = poly.coeffs
    deg = poly.degree
    zpow = [z**k for k in range(deg + 1)]
    vals = np.full(t.shape, coeffs[deg], dtype=np.int64)
    for i in range(deg - 1, -1, -1):
        vals = vals * t + coeffs[i] * zpow[deg - i]
    for d in ds:
        x = d * vals
        nonneg = x >= 0
        x_ok = np.where(nonneg, x, 0)
        r = np.sqrt(x_ok.astype(np.float64)).astype(np.int64)
        for _ in range(3):
            r = np.where((r + 1) * (r + 1) <= x_ok, r + 1, r)
        for _ in range(3):
            r = np.where((r > 0) & (r * r > x_ok), r - 1, r)
        hits = nonneg & (r * r == x_ok)
        for idx in np.flatnonzero(hits):
            points[d].append(WPoint(y=int(r[idx]), t=int(t[idx]), z=z))


def construct_divisor_point(poly: IntPoly, n: int, p: int) -> tuple[int, WPoint]:
    """An explicit rational point on a twist attached to a prime divisor p.

    For p dividing neither disc(P) nor the leading coefficient, a residue t
    with v_p(P(t)) = 1 exists (after a Taylor shift t -> t + p if needed,
    which works because P'(t) is a unit mod p).  Then d = P(t)^(n-1) makes
    [P(t) : t : 1] a point on the d-th twist, and v_p(d) = n - 1 shows p can
    never power a valuation certificate.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if poly.lc % p == 0:
        raise ValueError(f"{p} divides the leading coefficient")
    if discriminant(poly) % p == 0:
        raise ValueError(f"{p} divides the discriminant")
    cls = prime_sieve.classify(poly, p)
    if cls.verdict != prime_sieve.DIVISOR:
        raise ValueError(f"{p} is not a prime divisor of the polynomial")
    t = cls.witness
    value = poly(t)
    if value == 0 or valuation(p, value) >= 2:
        t += p
        value = poly(t)
    if value == 0 or valuation(p, value) != 1:
        raise InvariantError(f"Taylor shift failed to reach valuation 1 at p={p}")
    d = value ** (n - 1)
    y = abs(value) if n % 2 == 0 else value
    return d, WPoint(y=y, t=t, z=1)
