"""Twist certificates and exhaustive point searches.

The search has a vectorized quadratic row evaluator; tests cross-check it
pair-by-pair against direct big-integer evaluation and verify every
reported point on its curve equation exactly.
"""
import math
import random

import pytest

from twistlab import prime_sieve, twist_forge
from twistlab.errors import HypothesisError
from twistlab.primes import primes_upto
from twistlab.zpoly import IntPoly, discriminant, hom_eval, homogenize

T4P1 = IntPoly(1, 0, 0, 0, 1)


@pytest.fixture(scope="module")
def s_quartic():
    return prime_sieve.build_S(T4P1, 100)


def brute_search(poly, n, d, bound):
    """Independent oracle: direct enumeration with big-int power testing."""
    form = homogenize(poly)
    found = []
    values = [(1, 0)] + [
        (t, z)
        for z in range(1, bound + 1)
        for t in range(-bound, bound + 1)
        if math.gcd(t, z) == 1
    ]
    for t, z in values:
        x = d * hom_eval(form, t, z)
        if n % 2 == 0 and x < 0:
            continue
        root = round(abs(x) ** (1.0 / n)) if x else 0
        for r in range(max(0, root - 2), root + 3):
            if r**n == abs(x):
                y = r if x >= 0 else -r
                found.append((abs(y) if n % 2 == 0 else y, t, z))
                break
    return found


class TestIntegerNthRoot:
    def test_square(self):
        assert twist_forge.integer_nth_root(289, 2) == 17

    def test_negative_cube(self):
        assert twist_forge.integer_nth_root(-27, 3) == -3

    def test_non_power(self):
        assert twist_forge.integer_nth_root(50, 2) is None

    def test_negative_even_is_absent(self):
        assert twist_forge.integer_nth_root(-4, 2) is None

    def test_large_values(self):
        x = 123456789**5
        assert twist_forge.integer_nth_root(x, 5) == 123456789
        assert twist_forge.integer_nth_root(x + 1, 5) is None

    def test_boundary_near_powers(self):
        for r in (10**9, 2**31, 3**20):
            assert twist_forge.integer_nth_root(r * r, 2) == r
            assert twist_forge.integer_nth_root(r * r - 1, 2) is None
            assert twist_forge.integer_nth_root(r * r + 1, 2) is None


class TestMakeTwists:
    def test_primes(self, s_quartic):
        assert twist_forge.make_twists(s_quartic, 2, 3, "prime") == [3, 5, 7]

    def test_prime_times_power(self, s_quartic):
        assert twist_forge.make_twists(s_quartic, 2, 1, "prime-times-nth-power") == [12]

    def test_prime_power(self, s_quartic):
        assert twist_forge.make_twists(s_quartic, 2, 1, "prime-power") == [27]

    def test_rejects_empty(self):
        empty = prime_sieve.CertifiedS(IntPoly(-1, 0, 1), 10, ())
        with pytest.raises(ValueError):
            twist_forge.make_twists(empty, 2, 1, "prime")


class TestCertifyNoPoints:
    def test_basic_certificate(self, s_quartic):
        cert = twist_forge.certify_no_points(T4P1, 2, 3, s_quartic)
        assert cert is not None and (cert.witness_prime, cert.valuation) == (3, 1)

    def test_unit_d_inconclusive(self, s_quartic):
        assert twist_forge.certify_no_points(T4P1, 2, -1, s_quartic) is None

    def test_divisor_prime_inconclusive(self, s_quartic):
        assert twist_forge.certify_no_points(T4P1, 2, 17, s_quartic) is None

    def test_generated_shapes_all_certify(self, s_quartic):
        for shape in twist_forge.SHAPES:
            for d in twist_forge.make_twists(s_quartic, 2, 4, shape):
                assert twist_forge.certify_no_points(T4P1, 2, d, s_quartic) is not None

    def test_named_hypothesis_failures(self, s_quartic):
        with pytest.raises(HypothesisError) as err:
            twist_forge.certify_no_points(IntPoly(1, 0, 1), 4, 3, prime_sieve.build_S(IntPoly(1, 0, 1), 50))
        assert err.value.tag == "hyp-1"
        bad = IntPoly(-1, 1) ** 2 * IntPoly(2, 1) * IntPoly(3, 1)
        with pytest.raises(HypothesisError) as err:
            twist_forge.certify_no_points(bad, 2, 3, prime_sieve.build_S(bad, 50))
        assert err.value.tag == "hyp-2"

    def test_unit_scaling_of_certificates(self, s_quartic):
        for d in (3, 5, 7, 12, 27):
            base = twist_forge.certify_no_points(T4P1, 2, d, s_quartic) is not None
            for u in (2, 3):
                scaled = twist_forge.certify_no_points(T4P1, 2, d * u**2, s_quartic) is not None
                assert scaled == base

    def test_verify_round_trip(self, s_quartic):
        cert = twist_forge.certify_no_points(T4P1, 2, 27, s_quartic)
        assert twist_forge.verify_certificate(cert) == []

    def test_verify_catches_tampering(self, s_quartic):
        cert = twist_forge.certify_no_points(T4P1, 2, 3, s_quartic)
        forged = twist_forge.TwistCertificate(
            polynomial=cert.polynomial, n=2, d=17, witness_prime=17, valuation=1
        )
        assert any("divisor" in f for f in twist_forge.verify_certificate(forged))
        forged_val = twist_forge.TwistCertificate(
            polynomial=cert.polynomial, n=2, d=9, witness_prime=3, valuation=2
        )
        assert twist_forge.verify_certificate(forged_val) != []


class TestSearchPoints:
    def test_finds_small_point(self):
        report = twist_forge.search_points(T4P1, 2, 2, 10)
        assert (2, 1, 1) in [(p.y, p.t, p.z) for p in report.points]

    def test_certified_twist_empty(self, s_quartic):
        assert twist_forge.certify_no_points(T4P1, 2, 3, s_quartic) is not None
        assert twist_forge.search_points(T4P1, 2, 3, 200).points == ()

    def test_divisor_twist_has_point(self):
        report = twist_forge.search_points(T4P1, 2, 17, 10)
        assert (17, 2, 1) in [(p.y, p.t, p.z) for p in report.points]

    def test_every_point_verifies(self):
        rng = random.Random(31)
        for _ in range(15):
            poly = IntPoly(*(rng.randint(-9, 9) for _ in range(4)), rng.randint(1, 9))
            d = rng.choice([-3, -2, -1, 1, 2, 3, 5, 17])
            report = twist_forge.search_points(poly, 2, d, 25)
            assert report.exhaustive
            for pt in report.points:
                assert pt.on_curve(poly, 2, d)
                assert math.gcd(pt.t, pt.z) == 1 and pt.z >= 0
                if pt.z == 0:
                    assert pt.t == 1

    def test_fast_path_matches_exact_path(self):
        rng = random.Random(7)
        for _ in range(20):
            poly = IntPoly(*(rng.randint(-9, 9) for _ in range(4)), rng.randint(1, 9))
            d = rng.choice([-6, -1, 2, 3, 17, 33])
            fast = twist_forge.search_points(poly, 2, d, 30).points
            exact: dict = {d: []}
            form = homogenize(poly)
            y = twist_forge.integer_nth_root(d * hom_eval(form, 1, 0), 2)
            if y is not None:
                exact[d].append(twist_forge.WPoint(y=y, t=1, z=0))
            for z in range(1, 31):
                twist_forge._search_row_exact(form, 2, [d], z, 30, exact)
            assert list(fast) == exact[d]

    def test_against_brute_oracle(self):
        for d in (2, 3, 17, -1):
            report = twist_forge.search_points(T4P1, 2, d, 12)
            assert [(p.y, p.t, p.z) for p in report.points] == brute_search(T4P1, 2, d, 12)

    def test_cubic_exponent_search(self):
        poly = IntPoly(2, 0, 0, 0, 0, 0, 1)  # T^6 + 2, n = 3
        report = twist_forge.search_points(poly, 3, 4, 8)
        for pt in report.points:
            assert pt.on_curve(poly, 3, 4)
        # t = 1, z = 1: 4 * 3 = 12 not a cube; t = -1: 4 * 3 = 12; check a hit:
        # d * P(0, 1) = 4 * 2 = 8 = 2^3
        assert (2, 0, 1) in [(p.y, p.t, p.z) for p in report.points]

    def test_rejects_zero_d(self):
        with pytest.raises(ValueError):
            twist_forge.search_points(T4P1, 2, 0, 10)

    def test_point_at_infinity(self):
        # d * a_N = 8 * 1 = 2^3 puts [2 : 1 : 0] on the cubic twist
        poly = IntPoly(2, 0, 0, 0, 0, 0, 1)
        report = twist_forge.search_points(poly, 3, 8, 3)
        assert (2, 1, 0) in [(p.y, p.t, p.z) for p in report.points]
        assert report.points[0].z == 0  # infinity sorts first

    def test_points_sorted_by_z_then_t(self):
        report = twist_forge.search_points(T4P1, 2, 17, 50)
        keys = [(p.z, p.t) for p in report.points]
        assert keys == sorted(keys)


class TestConstructDivisorPoint:
    def test_quartic_at_17(self):
        d, pt = twist_forge.construct_divisor_point(T4P1, 2, 17)
        assert d == 17 and (pt.y, pt.t, pt.z) == (17, 2, 1)
        assert pt.on_curve(T4P1, 2, d)

    def test_rejects_ramified_prime(self):
        with pytest.raises(ValueError):
            twist_forge.construct_divisor_point(T4P1, 2, 2)  # 2 divides disc = 256

    def test_gaussian_at_5(self):
        d, pt = twist_forge.construct_divisor_point(IntPoly(1, 0, 1), 2, 5)
        assert d == 5 and (pt.y, pt.t, pt.z) == (5, 2, 1)

    def test_all_divisor_primes_to_100(self):
        disc = discriminant(T4P1)
        for p in primes_upto(100):
            if disc % p == 0:
                continue
            if prime_sieve.classify(T4P1, p).verdict != prime_sieve.DIVISOR:
                continue
            d, pt = twist_forge.construct_divisor_point(T4P1, 2, p)
            assert pt.on_curve(T4P1, 2, d)
            v = twist_forge.valuation(p, d)
            assert v == 1  # n - 1 for n = 2, never divisible by n
            assert v % 2 != 0

    def test_taylor_shift_engages(self):
        # T^2 + T + 25 at p = 5: smallest root residue is 0 with value 25,
        # valuation 2, so the t -> t + p shift must fire (disc = -99)
        poly = IntPoly(25, 1, 1)
        assert discriminant(poly) % 5 != 0
        d, pt = twist_forge.construct_divisor_point(poly, 2, 5)
        assert pt.t == 5 and twist_forge.valuation(5, poly(pt.t)) == 1
        assert pt.on_curve(poly, 2, d)

    def test_integer_root_witness(self):
        # (T-2)(T+10) at p = 7: the witness residue 2 is an exact integer
        # root, so the value is 0 and only the shift produces valuation 1
        poly = IntPoly(-2, 1) * IntPoly(10, 1)
        assert discriminant(poly) % 7 != 0
        d, pt = twist_forge.construct_divisor_point(poly, 2, 7)
        assert pt.t == 9 and twist_forge.valuation(7, poly(pt.t)) == 1
        assert pt.on_curve(poly, 2, d)
