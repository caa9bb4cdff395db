"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line and enforcing its stated tolerance and runtime budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""
import itertools
import json
import random
import time
from fractions import Fraction

from click.testing import CliRunner

from twistlab import census, galois_cert, kummer, modp, prime_sieve, twist_forge
from twistlab.cli import main
from twistlab.primes import primes_upto
from twistlab.zpoly import IntPoly, discriminant, is_separable

T4P1 = IntPoly(1, 0, 0, 0, 1)
QUARTIC_S4 = IntPoly(-1, -1, 0, 0, 1)  # T^4 - T - 1


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{criterion}: {detail}"


def brute_factor_degrees_mod_p(poly: IntPoly, p: int) -> tuple[int, ...]:
    """Exhaustive factorization oracle over F_p (independent of modp's DDF)."""
    q = modp.reduce(poly, p)
    inv = pow(q.coeffs[-1], p - 2, p)
    rem = tuple(c * inv % p for c in q.coeffs)
    degrees = []
    while len(rem) - 1 > 0:
        deg_rem = len(rem) - 1
        split = None
        for d in range(1, deg_rem // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                cand = tail + (1,)
                quo, r = modp._divmod(rem, cand, p)
                if not r:
                    split = (d, quo)
                    break
            if split:
                break
        if split is None:
            degrees.append(deg_rem)
            break
        d, rem = split
        degrees.append(d)
    return tuple(sorted(degrees))


def test_criterion_1_condition_h_certificate(tmp_path, monkeypatch):
    """Known fixed-point-free certificate through the CLI in under 1 s."""
    monkeypatch.setenv("TWISTLAB_CACHE_DIR", str(tmp_path))
    start = time.time()
    result = CliRunner().invoke(main, ["analyze", "-p", "T^4+1", "-n", "2"])
    elapsed = time.time() - start
    assert result.exit_code == 0
    cond = json.loads(result.output)["condition_h"]
    oracle = brute_factor_degrees_mod_p(T4P1, 3)
    ok = (
        cond["witness_prime"] == 3
        and tuple(cond["pattern"]) == oracle == (2, 2)
        and elapsed < 1.0
    )
    report("1 condition-H certificate", ok, f"witness 3, pattern {oracle}, {elapsed:.2f}s")


def test_criterion_2_chebotarev_density():
    """Non-divisor densities against brute-forced group targets, < 30 s each."""
    klein_four = [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    target_v4 = Fraction(
        sum(1 for s in klein_four if all(s[i] != i for i in range(4))), len(klein_four)
    )
    s4 = list(itertools.permutations(range(4)))
    target_s4 = Fraction(sum(1 for s in s4 if all(s[i] != i for i in range(4))), len(s4))
    assert (target_v4, target_s4) == (Fraction(3, 4), Fraction(3, 8))

    start = time.time()
    est_v4 = galois_cert.estimate_delta(T4P1, 100_000).estimate
    t_v4 = time.time() - start
    start = time.time()
    est_s4 = galois_cert.estimate_delta(QUARTIC_S4, 100_000).estimate
    t_s4 = time.time() - start
    ok = (
        0.73 <= est_v4 <= 0.77
        and 0.355 <= est_s4 <= 0.395
        and t_v4 < 30
        and t_s4 < 30
    )
    report(
        "2 Chebotarev density",
        ok,
        f"V4 {est_v4:.4f} (target {float(target_v4)}), S4 {est_s4:.4f} "
        f"(target {float(target_s4)}), {t_v4:.1f}s/{t_s4:.1f}s",
    )


def test_criterion_3_certificates_vs_search():
    """Certified twists stay empty to height 500; divisor primes produce
    verifying points.  Exact arithmetic, < 2 min total."""
    start = time.time()
    s = prime_sieve.build_S(T4P1, 100)
    ds = [3, 5, 7, 11, 13, 12, 27]
    searches = twist_forge.search_points_many(T4P1, 2, ds, 500)
    for d in ds:
        assert twist_forge.certify_no_points(T4P1, 2, d, s) is not None, d
        assert searches[d].points == (), d
        assert searches[d].exhaustive

    disc = discriminant(T4P1)
    divisor_primes = [
        p
        for p in primes_upto(100)
        if disc % p != 0 and prime_sieve.classify(T4P1, p).verdict == prime_sieve.DIVISOR
    ]
    assert divisor_primes == [17, 41, 73, 89, 97]
    for p in divisor_primes:
        d, pt = twist_forge.construct_divisor_point(T4P1, 2, p)
        assert pt.on_curve(T4P1, 2, d), p
        v = twist_forge.valuation(p, d)
        assert v == 1 and v % 2 != 0, p
    elapsed = time.time() - start
    ok = elapsed < 120
    report(
        "3 twist certificates vs search",
        ok,
        f"7 certified d empty to 500, {len(divisor_primes)} divisor points verify, "
        f"{elapsed:.1f}s",
    )


def test_criterion_4_counting_lemmas():
    """Exact counting identities and the two-way constant, < 1 min."""
    start = time.time()
    for n in (1, 2, 3):
        for h in range(1, 11):
            exact = census.count_coprime_tuples(n, h).exact_count
            brute = census.brute_force_tuple_count(n, h, "coprime")
            assert exact == brute, (n, h, exact, brute)
    for n in (2, 3):
        for h in range(1, 11):
            exact = census.count_squarefree_gcd_tuples(n, h).exact_count
            brute = census.brute_force_tuple_count(n, h, "squarefree-gcd")
            assert exact == brute, (n, h, exact, brute)
    series = 2**3 / census.zeta(3) * census.squarefree_zeta_series(3)
    closed = 2**3 / census.zeta(6)
    assert abs(series - closed) <= 1e-10
    ratio = census.count_coprime_tuples(2, 200).ratio
    assert 0.95 <= ratio <= 1.05
    elapsed = time.time() - start
    ok = elapsed < 60
    report(
        "4 counting lemmas",
        ok,
        f"exact counts match brute force, |C2 series-closed| = {abs(series - closed):.1e}, "
        f"ratio(2,200) = {ratio:.4f}, {elapsed:.1f}s",
    )


def test_criterion_5_density_trend():
    """Success fraction rises with the height (one inversion within 2 SE
    allowed); rational-root failures at H=300 strictly below H=10.  < 5 min."""
    start = time.time()
    curve = census.condition_star_density(4, 2, [10, 30, 100, 300], 2000, seed=7)
    elapsed = time.time() - start
    pts = curve.points
    inversions = 0
    for prev, nxt in zip(pts, pts[1:]):
        if nxt.success_fraction < prev.success_fraction:
            inversions += 1
            gap = prev.success_fraction - nxt.success_fraction
            assert gap <= 2 * (prev.stderr + nxt.stderr), "inversion beyond 2 SE"
    assert inversions <= 1
    assert pts[-1].failure_fraction < pts[0].failure_fraction
    ok = elapsed < 300
    report(
        "5 density trend",
        ok,
        "success " + " -> ".join(f"{p.success_fraction:.4f}" for p in pts)
        + f"; failure {pts[0].failure_fraction:.4f} -> {pts[-1].failure_fraction:.4f}, "
        f"{elapsed:.0f}s",
    )


def test_criterion_6_kummer_round_trip():
    """Specialization classes round-trip through the twist bridge; certified
    exclusions never occur.  Exact, < 1 min."""
    start = time.time()
    s = prime_sieve.build_S(T4P1, 100)
    verified = 0
    for t0 in kummer.rationals_by_height(20):
        rep = kummer.specialize(T4P1, 2, t0).rep
        if rep == 1:
            continue  # trivial class: outside the nontrivial-d contract
        height = max(abs(t0.numerator), t0.denominator)
        answer = kummer.is_specialization(T4P1, rep, height, s)
        assert answer.status == kummer.STATUS_YES, (t0, rep)
        verified += 1
    for d in (3, 5):
        answer = kummer.is_specialization(T4P1, d, 50, s)
        assert answer.status == kummer.STATUS_CERTIFIED_NO, d
        for t0 in kummer.rationals_by_height(50):
            assert kummer.specialize(T4P1, 2, t0).rep != d
        assert kummer.specialize_infinity(T4P1, 2).rep != d
    elapsed = time.time() - start
    ok = elapsed < 60
    report(
        "6 Kummer round trip",
        ok,
        f"{verified} classes round-tripped, exclusions hold for d in {{3, 5}}, "
        f"{elapsed:.1f}s",
    )


def test_criterion_7_nonparametric_witnesses(tmp_path, monkeypatch):
    """At least two independently re-verified witnesses; the exponent
    reduction reports e=2, n'=2 and the exact product polynomial."""
    monkeypatch.setenv("TWISTLAB_CACHE_DIR", str(tmp_path))
    result = CliRunner().invoke(
        main, ["parametric", "-p", "T^4+1", "-n", "2", "--count", "2"]
    )
    assert result.exit_code == 0
    parsed = json.loads(result.output)
    assert all(v["ok"] for v in parsed["hypothesis_checklist"].values())
    witnesses = parsed["witnesses"]
    assert len(witnesses) >= 2

    fresh_s = prime_sieve.build_S(T4P1, 10_000)
    for w in witnesses:
        for cert_json in w["chain"]:
            cert = twist_forge.TwistCertificate(
                polynomial=T4P1,
                n=cert_json["n"],
                d=cert_json["d"],
                witness_prime=cert_json["witness_prime"],
                valuation=cert_json["valuation"],
            )
            assert twist_forge.verify_certificate(cert) == []
            assert cert.witness_prime in fresh_s.primes

    biquadratic = IntPoly(1, 0, 1) * IntPoly(-2, 0, 1)
    red = kummer.reduce_kummer(biquadratic**2, 4)
    pipeline_ok = red.e == 2 and red.n_prime == 2 and red.p0 == biquadratic
    assert pipeline_ok
    report(
        "7 non-parametric witnesses",
        True,
        f"{len(witnesses)} witnesses re-verified; reduction e=2, n'=2, "
        f"P0 = {red.p0}",
    )


def test_criterion_8_soundness_regression():
    """10^4 randomized certified (P, d) pairs: the bounded search must agree
    that every certified twist is empty.  A single point fails the build."""
    start = time.time()
    rng = random.Random(20250810)
    pairs = 0
    polys = 0
    while pairs < 10_000:
        coeffs = [rng.randint(-50, 50) for _ in range(4)]
        lead = rng.choice([c for c in range(-50, 51) if c])
        poly = IntPoly(*coeffs, lead)
        if not poly.coeffs or poly.coeffs[0] == 0 or not is_separable(poly):
            continue
        s = prime_sieve.build_S(poly, 300)
        if len(s.primes) < 23:
            continue
        polys += 1
        ds = list(s.primes[:20])
        ds += [4 * p for p in s.primes[20:37]]
        ds += [p**3 for p in s.primes[:3]]  # exercises the big-integer path
        ds = ds[: min(len(ds), 10_000 - pairs)]
        for d in ds:
            assert twist_forge.certify_no_points(poly, 2, d, s) is not None, (poly, d)
        searches = twist_forge.search_points_many(poly, 2, ds, 200)
        for d, rep in searches.items():
            assert rep.points == (), f"counterexample: {poly}, d={d}, {rep.points[0]}"
        pairs += len(ds)
    elapsed = time.time() - start
    report(
        "8 soundness regression",
        True,
        f"{pairs} certified pairs across {polys} polynomials, zero points, "
        f"{elapsed:.0f}s",
    )
