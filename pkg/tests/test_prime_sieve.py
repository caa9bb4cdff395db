"""Prime divisor classification against exhaustive residue scans."""
import random

import pytest

from twistlab import prime_sieve
from twistlab.primes import primes_upto
from twistlab.zpoly import IntPoly

T4P1 = IntPoly(1, 0, 0, 0, 1)


def has_root_mod(poly: IntPoly, p: int) -> bool:
    return any(poly(t) % p == 0 for t in range(p))


class TestClassify:
    def test_divisor_with_witness(self):
        cls = prime_sieve.classify(T4P1, 17)
        assert cls.verdict == prime_sieve.DIVISOR
        assert cls.witness == 2
        assert T4P1(2) % 17 == 0

    def test_non_divisor(self):
        # fourth powers mod 3 are {0, 1}, so P(t) is 1 or 2 mod 3
        assert prime_sieve.classify(T4P1, 3).verdict == prime_sieve.NON_DIVISOR

    def test_excluded_leading(self):
        cls = prime_sieve.classify(IntPoly(3, 1, 3), 3)
        assert cls.verdict == prime_sieve.EXCLUDED
        assert cls.reason == prime_sieve.REASON_LEADING

    def test_content_prime_is_divisor_with_witness_zero(self):
        cls = prime_sieve.classify(IntPoly(3, 6, 3), 3)
        assert cls.verdict == prime_sieve.DIVISOR
        assert cls.witness == 0

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            prime_sieve.classify(T4P1, 15)

    def test_witness_is_smallest(self):
        rng = random.Random(3)
        for _ in range(50):
            poly = IntPoly(*(rng.randint(-40, 40) for _ in range(rng.randint(2, 6))))
            if poly.degree < 1:
                continue
            for p in primes_upto(97):
                cls = prime_sieve.classify(poly, p)
                if cls.verdict != prime_sieve.DIVISOR:
                    continue
                assert poly(cls.witness) % p == 0
                assert all(poly(t) % p != 0 for t in range(cls.witness))

    def test_exactness_on_random_corpus(self):
        # for p dividing neither lc nor content: divisor <=> root mod p
        rng = random.Random(9)
        for _ in range(40):
            poly = IntPoly(*(rng.randint(-40, 40) for _ in range(rng.randint(2, 7))))
            if poly.degree < 1:
                continue
            for p in primes_upto(97):
                cls = prime_sieve.classify(poly, p)
                if cls.verdict == prime_sieve.EXCLUDED:
                    assert poly.lc % p == 0
                    continue
                assert (cls.verdict == prime_sieve.DIVISOR) == has_root_mod(poly, p)

    def test_unit_scaling(self):
        rng = random.Random(21)
        for _ in range(25):
            poly = IntPoly(*(rng.randint(-20, 20) for _ in range(rng.randint(2, 6))))
            if poly.degree < 1:
                continue
            for p in (3, 5, 7, 11):
                for c in (2, 3, 5, 7, 11, 13):
                    if c % p == 0:
                        continue
                    assert (
                        prime_sieve.classify(poly, p).verdict
                        == prime_sieve.classify(poly * c, p).verdict
                    )


class TestBuildS:
    def test_quartic_oracle(self):
        # oracle: exhaustively test t^4 = -1 mod p; cross-check p % 8 != 1
        s = prime_sieve.build_S(T4P1, 100)
        by_scan = tuple(
            p for p in primes_upto(100) if not any((t**4 + 1) % p == 0 for t in range(p))
        )
        by_congruence = tuple(p for p in primes_upto(100) if p % 8 != 1 and p != 2)
        assert s.primes == by_scan == by_congruence

    def test_rational_root_empties_s(self):
        assert prime_sieve.build_S(IntPoly(-1, 0, 1), 100).primes == ()

    def test_gaussian_primes(self):
        assert prime_sieve.build_S(IntPoly(1, 0, 1), 20).primes == (3, 7, 11, 19)

    def test_rejects_zero_constant_term(self):
        with pytest.raises(ValueError):
            prime_sieve.build_S(IntPoly(0, 1, 1), 50)

    def test_members_disjoint_from_divisors(self):
        rng = random.Random(4)
        for _ in range(20):
            poly = IntPoly(*(rng.randint(-30, 30) for _ in range(5)))
            if poly.degree < 1 or not poly.coeffs[0]:
                continue
            s = prime_sieve.build_S(poly, 200)
            for p in s.primes:
                cls = prime_sieve.classify(poly, p)
                assert cls.verdict == prime_sieve.NON_DIVISOR
                assert poly.coeffs[0] % p != 0 and poly.lc % p != 0

    def test_matches_classification_assembly(self):
        poly = IntPoly(3, -1, 0, 0, 2)
        classes = {p: prime_sieve.classify(poly, p) for p in primes_upto(300)}
        assert (
            prime_sieve.build_S_from_classifications(poly, 300, classes).primes
            == prime_sieve.build_S(poly, 300).primes
        )


class TestDensity:
    def test_rational_root_density_zero(self):
        s = prime_sieve.build_S(IntPoly(-1, 0, 1), 1000)
        assert prime_sieve.density_of_S(s) == 0

    def test_gaussian_density_near_half(self):
        s = prime_sieve.build_S(IntPoly(1, 0, 1), 20000)
        assert abs(float(prime_sieve.density_of_S(s)) - 0.5) < 0.02

    def test_quartic_density_near_three_quarters(self):
        s = prime_sieve.build_S(T4P1, 20000)
        assert abs(float(prime_sieve.density_of_S(s)) - 0.75) < 0.02
