"""Exact lattice-point counting for coefficient boxes and randomized density
experiments over sampled polynomials.

Counting is exact via Moebius inversion; asymptotics use a self-contained
zeta evaluator (direct summation with an Euler-Maclaurin tail) so the module
carries no numeric dependencies.  Randomized experiments draw per-batch RNG
streams keyed by (seed, height, batch index), which makes every result
independent of how batches are distributed over workers.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Sequence

from . import galois_cert
from .errors import InvariantError
from .primes import factorize, mobius_sieve
from .zpoly import IntPoly, content_and_primitive, multiplicity_bound_ok

PREDICATE_COPRIME = "coprime"
PREDICATE_SQUAREFREE_GCD = "squarefree-gcd"

KIND_CONDITION_STAR = "condition-star"
KIND_QUADRATIC_EXTENSION = "quadratic-extension"

_BATCH_SIZE = 250
_BRUTE_LIMIT = 10**8
_SF_SERIES_CUTOFF = 100_000


def zeta(s: float, terms: int = 2000) -> float:
    """Riemann zeta via direct summation plus an integral tail correction;
    accurate to well below 1e-12 for s >= 2."""
    if s <= 1:
        raise ValueError("zeta(s) requires s > 1")
    head = sum(k**-s for k in range(1, terms))
    k = float(terms)
    tail = k ** (1 - s) / (s - 1) + k**-s / 2 + s * k ** (-s - 1) / 12
    tail -= s * (s + 1) * (s + 2) * k ** (-s - 3) / 720
    return head + tail


@lru_cache(maxsize=32)
def squarefree_zeta_series(s: int) -> float:
    """Direct summation of 1/k^s over squarefree k, with a density-corrected
    tail; equals zeta(s)/zeta(2s) by the Euler product."""
    if s < 2:
        raise ValueError("needs s >= 2")
    mu = mobius_sieve(_SF_SERIES_CUTOFF)
    head = sum(k**-float(s) for k in range(1, _SF_SERIES_CUTOFF + 1) if mu[k] != 0)
    density = 1.0 / zeta(2)
    tail = density * _SF_SERIES_CUTOFF ** (1 - s) / (s - 1)
    return head + tail


@dataclasses.dataclass(frozen=True)
class TupleCountReport:
    n: int
    height: int
    exact_count: int
    asymptotic_value: float

    @property
    def ratio(self) -> float:
        return self.exact_count / self.asymptotic_value


def _coprime_exact(n: int, height: int, mu: Sequence[int]) -> int:
    """|{(a_0..a_n) in [-H,H]^(n+1) : a_n != 0, gcd = 1}| by Moebius inversion."""
    if height < 1:
        return 0
    total = 0
    for k in range(1, height + 1):
        if mu[k] == 0:
            continue
        m = height // k
        total += mu[k] * (2 * m + 1) ** n * (2 * m)
    return total


def count_coprime_tuples(n: int, height: int) -> TupleCountReport:
    """Tuples with nonzero top coefficient and coprime entries; the main
    term is 2^(n+1) H^(n+1) / zeta(n+1) with an O(H^n) error."""
    if n < 1 or height < 1:
        raise ValueError("needs n >= 1 and H >= 1")
    mu = mobius_sieve(height)
    exact = _coprime_exact(n, height, mu)
    asymptotic = 2 ** (n + 1) * height ** (n + 1) / zeta(n + 1)
    return TupleCountReport(n=n, height=height, exact_count=exact, asymptotic_value=asymptotic)


def squarefree_gcd_constant(n: int) -> float:
    """The constant in front of H^(n+1) for the squarefree-gcd count.

    Evaluated two ways — the direct squarefree series and the closed form
    2^(n+1)/zeta(2n+2) — which must agree to 1e-10.
    """
    by_series = 2 ** (n + 1) / zeta(n + 1) * squarefree_zeta_series(n + 1)
    closed = 2 ** (n + 1) / zeta(2 * n + 2)
    if abs(by_series - closed) > 1e-10:
        raise InvariantError(
            f"squarefree constant mismatch: series {by_series!r} vs closed {closed!r}"
        )
    return closed


def count_squarefree_gcd_tuples(n: int, height: int) -> TupleCountReport:
    """Tuples whose gcd is squarefree, summed from the coprime counts over
    squarefree scaling factors."""
    if n < 2:
        raise ValueError("needs n >= 2")
    if height < 1:
        raise ValueError("needs H >= 1")
    mu = mobius_sieve(height)
    exact = 0
    for k in range(1, height + 1):
        if mu[k] == 0:
            continue
        exact += _coprime_exact(n, height // k, mu)
    asymptotic = squarefree_gcd_constant(n) * height ** (n + 1)
    return TupleCountReport(n=n, height=height, exact_count=exact, asymptotic_value=asymptotic)


def brute_force_tuple_count(n: int, height: int, predicate: str) -> int:
    """Direct enumeration oracle for the two counting identities."""
    if (2 * height + 1) ** (n + 1) > _BRUTE_LIMIT:
        raise ValueError("brute-force range too large")
    if predicate not in (PREDICATE_COPRIME, PREDICATE_SQUAREFREE_GCD):
        raise ValueError(f"unknown predicate {predicate!r}")
    mu = mobius_sieve(height)  # the gcd never exceeds |a_n| <= H
    count = 0
    for tup in itertools.product(range(-height, height + 1), repeat=n + 1):
        if tup[-1] == 0:
            continue
        g = 0
        for a in tup:
            g = math.gcd(g, a)
        if predicate == PREDICATE_COPRIME:
            count += g == 1
        else:
            count += mu[g] != 0
    return count


# ---------------------------------------------------------------------------
# randomized density experiments


@dataclasses.dataclass(frozen=True)
class CurvePoint:
    height: int
    samples: int  # accepted members of the sampled family
    rejected: int  # draws rejected by the membership conditions
    success: int
    failure: int
    inconclusive: int
    degree_dropped: int = 0  # quadratic census: members of degree N-1

    @property
    def success_fraction(self) -> float:
        return self.success / self.samples if self.samples else 0.0

    @property
    def failure_fraction(self) -> float:
        return self.failure / self.samples if self.samples else 0.0

    @property
    def inconclusive_fraction(self) -> float:
        return self.inconclusive / self.samples if self.samples else 0.0

    @property
    def stderr(self) -> float:
        if not self.samples:
            return 0.0
        f = self.success_fraction
        return math.sqrt(f * (1.0 - f) / self.samples)


@dataclasses.dataclass(frozen=True)
class DensityCurve:
    kind: str
    degree: int
    n: int
    samples_per_height: int
    seed: int
    points: tuple[CurvePoint, ...]

    def size_normalization(self, height: int) -> float:
        """The 2^(N+1) H^(N+1) volume the family count is measured against."""
        return 2 ** (self.degree + 1) * float(height) ** (self.degree + 1)

    def family_size_estimate(self, point: CurvePoint) -> float:
        """Estimated family size at a height, from the acceptance rate."""
        h = point.height
        if self.kind == KIND_CONDITION_STAR:
            raw = (2 * h + 1) ** self.degree * (2 * h)
        else:
            raw = (2 * h + 1) ** (self.degree + 1)
        draws = point.samples + point.rejected
        return raw * (point.samples / draws) if draws else 0.0


def _classify_sample(poly: IntPoly, cert_bound: int) -> str:
    if galois_cert.rational_roots(poly):
        return "failure"
    if galois_cert.certify_condition_H(poly, cert_bound) is not None:
        return "success"
    return "inconclusive"


def _star_batch(args: tuple) -> tuple[int, int, int, int]:
    degree, n, height, seed, index, size, cert_bound = args
    rng = random.Random(f"{seed}:star:{height}:{index}")
    rejected = success = failure = inconclusive = 0
    for _ in range(size):
        coeffs = [rng.randint(-height, height) for _ in range(degree)]
        top = 0
        while top == 0:
            top = rng.randint(-height, height)
        poly = IntPoly(*coeffs, top)
        if not multiplicity_bound_ok(poly, n):
            rejected += 1
            continue
        outcome = _classify_sample(poly, cert_bound)
        if outcome == "success":
            success += 1
        elif outcome == "failure":
            failure += 1
        else:
            inconclusive += 1
    return rejected, success, failure, inconclusive


def _quadratic_batch(args: tuple) -> tuple[int, int, int, int, int]:
    degree, height, seed, index, size, cert_bound = args
    rng = random.Random(f"{seed}:quad:{height}:{index}")
    rejected = success = failure = inconclusive = dropped = 0
    for _ in range(size):
        poly = IntPoly(*(rng.randint(-height, height) for _ in range(degree + 1)))
        if poly.degree < degree - 1:
            rejected += 1
            continue
        if poly.degree < 1 or not multiplicity_bound_ok(poly, 2):
            rejected += 1
            continue
        content, _ = content_and_primitive(poly)
        if any(e > 1 for e in _content_exponents(content)):
            rejected += 1
            continue
        if poly.degree == degree - 1:
            dropped += 1
            inconclusive += 1
            continue
        outcome = _classify_sample(poly, cert_bound)
        if outcome == "success":
            success += 1
        elif outcome == "failure":
            failure += 1
        else:
            inconclusive += 1
    return rejected, success, failure, inconclusive, dropped


def _content_exponents(content: int):
    return factorize(content).values() if content > 1 else ()


def _batches(samples: int) -> list[tuple[int, int]]:
    out = []
    index = 0
    remaining = samples
    while remaining > 0:
        size = min(_BATCH_SIZE, remaining)
        out.append((index, size))
        index += 1
        remaining -= size
    return out


def _run_batches(fn, args_list, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, args_list))
    return [fn(a) for a in args_list]


def condition_star_density(
    degree: int,
    n: int,
    heights: Sequence[int],
    samples: int,
    seed: int,
    cert_bound: int = galois_cert.DEFAULT_CERT_BOUND,
    workers: int = 1,
) -> DensityCurve:
    """Sampled fractions of degree-N polynomials (multiplicities below n)
    that earn a fixed-point-free certificate, have a rational root, or stay
    inconclusive, per height.
    """
    if degree % n != 0:
        raise ValueError(f"{n} must divide the degree {degree}")
    if samples < 100:
        raise ValueError("at least 100 samples are needed per height")
    points = []
    for height in heights:
        results = _run_batches(
            _star_batch,
            [(degree, n, height, seed, i, size, cert_bound) for i, size in _batches(samples)],
            workers,
        )
        rejected = sum(r[0] for r in results)
        success = sum(r[1] for r in results)
        failure = sum(r[2] for r in results)
        inconclusive = sum(r[3] for r in results)
        points.append(
            CurvePoint(
                height=height,
                samples=success + failure + inconclusive,
                rejected=rejected,
                success=success,
                failure=failure,
                inconclusive=inconclusive,
            )
        )
    return DensityCurve(
        kind=KIND_CONDITION_STAR,
        degree=degree,
        n=n,
        samples_per_height=samples,
        seed=seed,
        points=tuple(points),
    )


def quadratic_extension_census(
    degree: int,
    heights: Sequence[int],
    samples: int,
    seed: int,
    cert_bound: int = galois_cert.DEFAULT_CERT_BOUND,
    workers: int = 1,
) -> DensityCurve:
    """Census of quadratic function-field extensions with a fixed number of
    branch points: separable polynomials of degree N (or N-1, tracked
    separately) with squarefree content, classified as for the star census.
    """
    if degree % 2 != 0 or degree < 2:
        raise ValueError("the branch-point count N must be even and >= 2")
    if samples < 100:
        raise ValueError("at least 100 samples are needed per height")
    points = []
    for height in heights:
        results = _run_batches(
            _quadratic_batch,
            [(degree, height, seed, i, size, cert_bound) for i, size in _batches(samples)],
            workers,
        )
        rejected = sum(r[0] for r in results)
        success = sum(r[1] for r in results)
        failure = sum(r[2] for r in results)
        inconclusive = sum(r[3] for r in results)
        dropped = sum(r[4] for r in results)
        points.append(
            CurvePoint(
                height=height,
                samples=success + failure + inconclusive,
                rejected=rejected,
                success=success,
                failure=failure,
                inconclusive=inconclusive,
                degree_dropped=dropped,
            )
        )
    return DensityCurve(
        kind=KIND_QUADRATIC_EXTENSION,
        degree=degree,
        n=2,
        samples_per_height=samples,
        seed=seed,
        points=tuple(points),
    )
