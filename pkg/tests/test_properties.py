"""Property suites run with at least 1000 generated cases each."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from braidrep.orbit import orbit_generate, sigma_k
from braidrep.monomial import mm_compose
from braidrep.rep import BraidWord, build_phi_m, evaluate_word
from braidrep.scalars import ZERO
from strategies import braid_words, monomial_pairs, scalars

THOUSAND = settings(max_examples=1000, deadline=None, suppress_health_check=list(HealthCheck))


@THOUSAND
@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    assert a * 1 == a


@THOUSAND
@given(monomial_pairs())
def test_monomial_product_matches_dense_product(pair):
    a, b = pair
    assert mm_compose(a, b).to_dense() == a.to_dense() @ b.to_dense()


_WORD_REPS = {n: build_phi_m(n, max(1, n // 2)) for n in (3, 4, 5, 6)}


@THOUSAND
@given(st.sampled_from(sorted(_WORD_REPS)).flatmap(lambda n: st.tuples(st.just(n), braid_words(n))))
def test_word_times_inverse_word_is_identity(case):
    n, letters = case
    rep = _WORD_REPS[n]
    w = BraidWord(letters)
    assert mm_compose(evaluate_word(rep, w), evaluate_word(rep, w.inverse())).is_identity()
    assert evaluate_word(rep, w + w.inverse()).is_identity()


@st.composite
def orbit_points(draw):
    n = draw(st.integers(3, 8))
    z = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    x = draw(st.permutations(z))
    k = draw(st.integers(1, n - 2))
    j = draw(st.integers(1, n - 1))
    return tuple(x), k, j


@THOUSAND
@given(orbit_points())
def test_orbit_braid_combinatorics(case):
    x, k, j = case
    s = lambda y, i: sigma_k(y, i)  # noqa: E731
    assert s(s(s(x, k), k + 1), k) == s(s(s(x, k + 1), k), k + 1)
    if abs(j - k) > 1:
        assert s(s(x, k), j) == s(s(x, j), k)


def test_orbit_braid_combinatorics_exhaustive():
    for n in range(3, 9):
        for z in [(1,) * (n // 2) + (0,) * (n - n // 2), tuple(i % 3 for i in range(n))]:
            for x in orbit_generate(z).basis:
                for k in range(1, n - 1):
                    assert sigma_k(sigma_k(sigma_k(x, k), k + 1), k) == sigma_k(sigma_k(sigma_k(x, k + 1), k), k + 1)
                for k in range(1, n):
                    for j in range(k + 2, n):
                        assert sigma_k(sigma_k(x, k), j) == sigma_k(sigma_k(x, j), k)
