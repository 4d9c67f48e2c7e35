"""
Unit tests for the number theory primitives.

Tests:
- Prime generation and the Miller-Rabin test
- Extended Euclid (examples and Bezout property)
- Exact integer roots
- Pairwise-coprime sampling and its attempt budget
- Canonical integer/bytes codec
- Bounded rejection sampling
"""

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from packages.bfhp.errors import DomainError, SamplingBudgetExceeded
from packages.bfhp.numtheory import (
    SMALL_PRIMES,
    bitlen,
    bytes_to_int,
    ceil_div,
    ext_gcd,
    floor_div,
    gen_prime,
    int_to_bytes,
    integer_root,
    is_probable_prime,
    make_rng,
    open_interval,
    rejection_sample,
    sample_open_interval,
    sample_pairwise_coprime,
)


def _reference_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class TestPrimes:
    """Tests for is_probable_prime and gen_prime."""

    def test_small_primes_sieve(self):
        assert SMALL_PRIMES[:10] == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
        assert SMALL_PRIMES[-1] == 1999

    def test_classifies_small_values(self):
        assert not is_probable_prime(0)
        assert not is_probable_prime(1)
        assert is_probable_prime(2)
        assert not is_probable_prime(1_000_000)

    def test_known_large_prime_and_composite(self, rng):
        mersenne = (1 << 127) - 1
        assert is_probable_prime(mersenne, rng)
        assert not is_probable_prime(mersenne * 1_000_003, rng)
        # no factor below the trial-division bound
        assert not is_probable_prime(((1 << 61) - 1) * ((1 << 89) - 1), rng)

    def test_three_bit_primes(self, rng):
        assert {gen_prime(3, rng) for _ in range(50)} <= {5, 7}

    def test_five_bit_primes(self, rng):
        assert {gen_prime(5, rng) for _ in range(50)} <= {17, 19, 23, 29, 31}

    def test_64_bit_prime_is_odd_and_in_range(self, rng):
        p = gen_prime(64, rng)
        assert (1 << 63) < p < (1 << 64)
        assert p % 2 == 1
        assert all(p % q for q in SMALL_PRIMES)
        assert is_probable_prime(p, random.Random(1))

    def test_rejects_tiny_bit_sizes(self, rng):
        with pytest.raises(DomainError):
            gen_prime(2, rng)


class TestExtGcd:
    """Tests for ext_gcd."""

    def test_identity_case(self):
        assert ext_gcd(1, 0) == (1, 1, 0)

    def test_coprime_example(self):
        assert ext_gcd(13, 11) == (1, -5, 6)

    def test_non_coprime_example(self):
        g, x, y = ext_gcd(12, 18)
        assert g == 6
        assert 12 * x + 18 * y == 6

    def test_rejects_both_zero(self):
        with pytest.raises(DomainError):
            ext_gcd(0, 0)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            ext_gcd(-3, 5)

    @given(st.integers(min_value=0, max_value=1 << 256), st.integers(min_value=1, max_value=1 << 256))
    def test_bezout_identity(self, a, b):
        g, x, y = ext_gcd(a, b)
        assert a * x + b * y == g
        assert a % g == 0 and b % g == 0
        assert g == _reference_gcd(a, b)


class TestIntegerRoot:
    """Tests for integer_root."""

    @pytest.mark.parametrize(
        ("x", "e", "expected"),
        [(27, 3, (3, True)), (26, 3, (2, False)), (128, 7, (2, True)), (0, 5, (0, True))],
    )
    def test_examples(self, x, e, expected):
        assert integer_root(x, e) == expected

    def test_square_root_of_large_square(self):
        r = (1 << 200) + 12345
        assert integer_root(r * r, 2) == (r, True)
        assert integer_root(r * r - 1, 2) == (r - 1, False)

    def test_rejects_bad_input(self):
        with pytest.raises(DomainError):
            integer_root(-1, 3)
        with pytest.raises(DomainError):
            integer_root(8, 0)

    @given(st.integers(min_value=0, max_value=1 << 512), st.integers(min_value=1, max_value=9))
    def test_floor_root_bounds(self, x, e):
        r, exact = integer_root(x, e)
        assert r**e <= x < (r + 1) ** e
        assert exact == (r**e == x)


class TestCoprimeSampling:
    """Tests for sample_pairwise_coprime."""

    def test_four_five_bit_generators(self, rng):
        values = sample_pairwise_coprime(4, 5, exclude={29}, rng=rng)
        assert len(values) == 4
        assert 29 not in values
        assert all(16 < v < 31 for v in values)
        for i, a in enumerate(values):
            for b in values[i + 1 :]:
                assert math.gcd(a, b) == 1

    def test_single_value(self, rng):
        (value,) = sample_pairwise_coprime(1, 5, rng=rng)
        assert 16 < value < 31

    def test_interval_too_small(self, rng):
        with pytest.raises(SamplingBudgetExceeded):
            sample_pairwise_coprime(4, 3, rng=rng)

    def test_attempt_budget(self, rng):
        # (8, 15) cannot hold five pairwise-coprime integers
        with pytest.raises(SamplingBudgetExceeded) as exc_info:
            sample_pairwise_coprime(5, 4, rng=rng, attempts=200)
        assert exc_info.value.attempts == 200

    def test_cryptographic_size(self, rng):
        values = sample_pairwise_coprime(4, 256, rng=rng)
        assert all(bitlen(v) == 256 for v in values)
        assert math.gcd(values[0] * values[1], values[2] * values[3]) == 1


class TestIntervals:
    """Tests for the open-interval helpers and exact division."""

    def test_open_interval(self):
        assert open_interval(5) == (16, 31)

    def test_sample_is_strictly_inside(self, rng):
        assert all(16 < sample_open_interval(5, rng) < 31 for _ in range(200))

    def test_empty_interval_rejected(self, rng):
        with pytest.raises(DomainError):
            sample_open_interval(1, rng)

    def test_floor_and_ceil_division(self):
        assert floor_div(-7, 2) == -4
        assert ceil_div(-7, 2) == -3
        assert ceil_div(7, 2) == 4
        with pytest.raises(DomainError):
            ceil_div(1, 0)


class TestCodec:
    """Tests for the canonical integer/bytes codec."""

    def test_zero_is_empty(self):
        assert int_to_bytes(0) == b""
        assert bytes_to_int(b"") == 0
        assert bitlen(0) == 0

    def test_minimal_encoding(self):
        assert int_to_bytes(256) == b"\x01\x00"
        assert bytes_to_int(b"\x01\x00") == 256

    def test_leading_zero_rejected_in_strict_mode(self):
        with pytest.raises(DomainError):
            bytes_to_int(b"\x00\x01")
        assert bytes_to_int(b"\x00\x01", strict=False) == 1

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            int_to_bytes(-1)


class TestRandomness:
    """Tests for make_rng and rejection_sample."""

    def test_seeded_generator_is_reproducible(self):
        assert make_rng(7).getrandbits(64) == make_rng(7).getrandbits(64)

    def test_unseeded_generator_uses_os_entropy(self):
        assert isinstance(make_rng(), random.SystemRandom)

    def test_rejection_sample_returns_first_accepted(self):
        draws = iter([None, None, 5, 6])
        assert rejection_sample(lambda: next(draws), "value", 10) == 5

    def test_rejection_sample_budget(self):
        with pytest.raises(SamplingBudgetExceeded) as exc_info:
            rejection_sample(lambda: None, "nothing", 3)
        assert exc_info.value.what == "nothing"
        assert exc_info.value.attempts == 3
