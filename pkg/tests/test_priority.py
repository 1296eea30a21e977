"""Pseudo-random priority map: bijection, parameter checks, prime helpers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsulab import BIG_PRIME, PriorityFn, is_prime_u64, next_prime_coprime


def test_small_table_by_hand():
    fn = PriorityFn(n=7, shift=0, prime=3)
    assert fn.table() == [0, 3, 6, 2, 5, 1, 4]
    assert [fn(x) for x in range(7)] == [0, 3, 6, 2, 5, 1, 4]


def test_shared_factor_rejected():
    with pytest.raises(ValueError):
        PriorityFn(n=6, shift=0, prime=3)
    with pytest.raises(ValueError):
        PriorityFn(n=10, shift=3, prime=5)


def test_parameter_bounds():
    with pytest.raises(ValueError):
        PriorityFn(n=0, shift=0, prime=3)
    with pytest.raises(ValueError):
        PriorityFn(n=5, shift=-1, prime=3)
    with pytest.raises(ValueError):
        PriorityFn(n=5, shift=0, prime=0)


def test_default_prime_is_prime():
    assert is_prime_u64(BIG_PRIME)
    assert BIG_PRIME.bit_length() == 62


@pytest.mark.parametrize("x,expect", [
    (0, False), (1, False), (2, True), (3, True), (4, False),
    (25, False), (97, True), (561, False),  # 561 is a Carmichael number
    (2 ** 61 - 1, True), (10 ** 12 + 39, True),
    (1000003 * 1000033, False),
])
def test_is_prime_u64(x, expect):
    assert is_prime_u64(x) is expect


def test_next_prime_coprime_stays_put_when_valid():
    assert next_prime_coprime(BIG_PRIME, 1000) == BIG_PRIME


def test_next_prime_coprime_advances():
    # start below a known prime
    assert next_prime_coprime(90, 7) == 97
    # skip a prime that divides n
    assert next_prime_coprime(7, 7 * 12) == 11


def test_generate_is_deterministic():
    a = PriorityFn.generate(100, seed=5)
    b = PriorityFn.generate(100, seed=5)
    c = PriorityFn.generate(100, seed=6)
    assert (a.shift, a.prime) == (b.shift, b.prime)
    assert a.shift != c.shift
    assert a.prime == BIG_PRIME


@given(n=st.integers(min_value=1, max_value=2048),
       seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=60, deadline=None)
def test_generated_tables_are_permutations(n, seed):
    fn = PriorityFn.generate(n, seed=seed)
    table = fn.table_array()
    assert np.bincount(table, minlength=n).max() == 1
    assert math.gcd(fn.prime, n) == 1


@given(n=st.integers(min_value=1, max_value=512),
       shift=st.integers(min_value=0, max_value=2 ** 62),
       x=st.integers(min_value=0, max_value=511))
@settings(max_examples=80, deadline=None)
def test_scalar_matches_table(n, shift, x):
    fn = PriorityFn(n=n, shift=shift, prime=next_prime_coprime(BIG_PRIME, n))
    assert fn(x % n) == fn.table()[x % n]
