from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitdist.numtheory import (
    RAMIFIED,
    hensel_sqrt,
    is_prime,
    least_sqrt_mod,
    legendre,
    primes_upto,
    residue_rule,
    residue_status,
    scan_embedding_primes,
)

ODD_PRIMES = [p for p in primes_upto(500) if p > 2]


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(p) == (p in set(primes_upto(1000))) for p in range(1000))
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


class TestLegendre:
    def test_examples(self):
        assert legendre(-1, 7) == -1
        assert legendre(3, 11) == 1
        assert legendre(0, 5) == 0

    def test_rejects_even_or_composite(self):
        for p in (2, 9, 15):
            with pytest.raises(ValueError):
                legendre(1, p)

    @given(st.integers(-10**6, 10**6), st.sampled_from(ODD_PRIMES))
    def test_matches_squares(self, a, p):
        squares = {x * x % p for x in range(1, p)}
        expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre(a, p) == expected

    @given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.sampled_from(ODD_PRIMES))
    def test_multiplicative(self, a, b, p):
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


class TestResidueRule:
    def test_examples(self):
        assert residue_rule(3, 11) is True
        assert residue_rule(3, 7) is False and legendre(3, 7) == -1
        assert residue_rule(11, 83) is True

    def test_ramified(self):
        assert residue_status(3, 3) == RAMIFIED
        assert residue_status(11, 11) == RAMIFIED
        with pytest.raises(ValueError):
            residue_rule(3, 3)

    def test_only_3_and_11(self):
        with pytest.raises(ValueError):
            residue_rule(5, 7)

    @pytest.mark.parametrize("a", [3, 11])
    def test_agrees_with_euler_below_10k(self, a):
        for q in primes_upto(10_000):
            if q > 2 and q % a:
                assert residue_rule(a, q) == (legendre(a, q) == 1), q


class TestHensel:
    def test_examples(self):
        # the least root of 7 mod 3 is 1; the root 2 is the one matching sqrt 7 - 2
        assert hensel_sqrt(7, 3, 1) == 1
        assert hensel_sqrt(7, 3, 1, root=2) == 2
        assert hensel_sqrt(7, 3, 2, root=2) == 5
        assert hensel_sqrt(3, 11, 1) == 5
        assert least_sqrt_mod(7, 3) == 1

    def test_no_root(self):
        with pytest.raises(ValueError):
            hensel_sqrt(2, 3, 4)
        with pytest.raises(ValueError):
            hensel_sqrt(7, 3, 2, root=0)

    @given(st.sampled_from(ODD_PRIMES), st.integers(1, 10**6), st.integers(1, 12))
    def test_lifts_are_consistent(self, p, n, k):
        if legendre(n, p) != 1:
            return
        for root in (None, p - least_sqrt_mod(n, p)):
            s_k = hensel_sqrt(n, p, k, root)
            s_k1 = hensel_sqrt(n, p, k + 1, root)
            assert 0 <= s_k < p**k
            assert (s_k * s_k - n) % p**k == 0
            assert s_k1 % p**k == s_k


class TestScan:
    def test_examples(self):
        assert [r.prime for r in scan_embedding_primes(True, [3, 11], 100)] == [83]
        assert [r.prime for r in scan_embedding_primes(True, [], 12)] == [3, 7, 11]
        assert [r.prime for r in scan_embedding_primes(False, [3], 13)] == [11, 13]

    def test_failures_for_the_right_reason(self):
        # 23, 47, 59, 71 are 3 mod 4 with 3 a square but 11 a non-square
        for q in (23, 47, 59, 71):
            assert q % 4 == 3 and legendre(3, q) == 1 and legendre(11, q) == -1

    def test_report_fields(self):
        (rep,) = scan_embedding_primes(True, [3, 11], 100)
        assert rep.passes == {"mod4_3": True, "qr_3": True, "qr_11": True}

    def test_bad_limit(self):
        with pytest.raises(ValueError):
            scan_embedding_primes(True, [], 1)
