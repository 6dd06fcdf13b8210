from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidrep.errors import IndexOutOfRange, NotBinaryTuple, TupleTooShort
from braidrep.orbit import (
    complement_tuple,
    format_tuple,
    orbit_cardinality,
    orbit_generate,
    parse_tuple,
    sigma_k,
)


def brute_orbit(z):
    return sorted(set(permutations(z)))


def test_two_ones_and_a_zero():
    orb = orbit_generate((1, 1, 0))
    assert orb.basis == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert orb.dim == 3


def test_all_distinct_gives_factorial():
    assert orbit_generate((2, 1, 0)).dim == 6
    assert orbit_generate((5, 3, 9, 1)).dim == 24


def test_n5_m3_endpoints():
    orb = orbit_generate((0, 0, 1, 1, 1))
    assert orb.dim == 10
    assert orb.basis[0] == (0, 0, 1, 1, 1)
    assert orb.basis[-1] == (1, 1, 1, 0, 0)


def test_degenerate_seed():
    orb = orbit_generate((4, 4, 4))
    assert orb.basis == ((4, 4, 4),)


def test_too_short():
    with pytest.raises(TupleTooShort):
        orbit_generate((1,))
    with pytest.raises(TupleTooShort):
        orbit_cardinality(())


@pytest.mark.parametrize("z, size", [((1, 0, 0, 0, 0), 5), ((1, 1, 1, 0, 0), 10), ((2, 1, 0), 6)])
def test_cardinality_examples(z, size):
    assert orbit_cardinality(z) == size


seeds = st.lists(st.integers(0, 3), min_size=2, max_size=7)


@given(seeds)
def test_orbit_matches_brute_force(z):
    orb = orbit_generate(z)
    assert list(orb.basis) == brute_orbit(z)
    assert orb.dim == orbit_cardinality(z)
    assert all(orb.rank[x] == i for i, x in enumerate(orb.basis))
    assert all(sorted(x) == sorted(z) for x in orb.basis)


@pytest.mark.parametrize("n", range(2, 11))
def test_cardinality_equals_enumeration_up_to_n10(n):
    for z in [(1,) + (0,) * (n - 1), tuple(i % 3 for i in range(n)), (1,) * (n // 2) + (0,) * (n - n // 2)]:
        assert orbit_generate(z).dim == orbit_cardinality(z)


def test_sigma_examples():
    assert sigma_k((0, 1, 0, 1, 1), 1) == (1, 0, 0, 1, 1)
    assert sigma_k((1, 1, 0), 2) == (1, 0, 1)
    assert sigma_k((0, 1, 1, 0), 2) == (0, 1, 1, 0)


@pytest.mark.parametrize("k", [0, 3, -1])
def test_sigma_out_of_range(k):
    with pytest.raises(IndexOutOfRange):
        sigma_k((1, 2, 3), k)


@given(seeds, st.data())
def test_sigma_is_involution_preserving_orbit(z, data):
    orb = orbit_generate(z)
    k = data.draw(st.integers(1, len(z) - 1))
    for x in orb.basis:
        y = sigma_k(x, k)
        assert y in orb
        assert sigma_k(y, k) == x


def test_sigma_perm_on_ranks():
    orb = orbit_generate((1, 1, 0, 0, 0))
    perm = orb.sigma_perm(1)
    assert sorted(perm) == list(range(orb.dim))


def test_complement_examples():
    assert complement_tuple((1, 0, 0, 1, 0, 1)) == (0, 1, 1, 0, 1, 0)
    assert complement_tuple((1, 1, 1, 0, 0, 0)) == (0, 0, 0, 1, 1, 1)
    x = (0, 1, 1, 0)
    assert complement_tuple(complement_tuple(x)) == x
    with pytest.raises(NotBinaryTuple):
        complement_tuple((0, 2, 1))


def test_tuple_text_round_trip():
    assert format_tuple((0, 1, 1, 0, 1)) == "(0,1,1,0,1)"
    assert parse_tuple("(0,1,1,0,1)") == (0, 1, 1, 0, 1)
    assert parse_tuple("1,0,0") == (1, 0, 0)
    with pytest.raises(ValueError):
        parse_tuple("(1,a)")
