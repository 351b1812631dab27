import cmath
from itertools import product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lacsphere.arith import euler_phi
from lacsphere.errors import ResourceError
from lacsphere.expsum import (
    KloostermanParams, kloosterman_bruteforce, kloosterman_factored, kloosterman_many,
    kloosterman_q_sum, kloosterman_sup, kloosterman_sup_detail, kloosterman_table,
    magyar_sup_bound, rho_weighted_sum, singular_series_partial,
)


def naive_K(d, lam, q, l):
    """Literal double sum in pure Python."""
    us = [a for a in range(q) if gcd(a, q) == 1] if q > 1 else [0]
    total = 0j
    for a in us:
        for x in product(range(q), repeat=d):
            ph = -lam * a + a * sum(v * v for v in x) + sum(li * xi for li, xi in zip(l, x))
            total += cmath.exp(2j * cmath.pi * (ph % q) / q)
    return total / q**d


def test_q1_is_one():
    for d in (2, 4, 5):
        for lam in (1, 7, 100):
            p = KloostermanParams(d, lam, 1)
            assert abs(kloosterman_bruteforce(p) - 1) < 1e-12
            assert abs(kloosterman_factored(p) - 1) < 1e-12


def test_known_values(store):
    p = KloostermanParams(4, 3, 2, (0, 0, 0, 0))
    assert abs(kloosterman_bruteforce(p)) < 1e-12
    assert abs(kloosterman_factored(p)) < 1e-12
    p = KloostermanParams(4, 1, 3)
    b = kloosterman_bruteforce(p)
    assert abs(b - naive_K(4, 1, 3, (0, 0, 0, 0))) < 1e-12
    assert abs(b - (-1 / 9)) < 1e-12
    assert store.check("K_d4_lam1_q3_l0", b.real, 1e-12)
    assert abs(kloosterman_factored(p) - b) < 1e-9
    p = KloostermanParams(5, 7, 8, (1, 0, 0, 0, 0))
    assert store.check("K_d5_lam7_q8_l10000", kloosterman_bruteforce(p).real, 1e-12)
    p = KloostermanParams(4, 6, 9, (1, 2, 3, 4))
    assert store.check("K_d4_lam6_q9_l12345", kloosterman_bruteforce(p).real, 1e-12)


def test_fixture_K_5_4():
    p = KloostermanParams(4, 5, 4, (1, 0, 0, 0))
    b = kloosterman_bruteforce(p)
    assert abs(b - naive_K(4, 5, 4, (1, 0, 0, 0))) < 1e-12
    assert abs(kloosterman_factored(p) - b) < 1e-9


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_bruteforce_matches_literal_sum(q):
    rng = np.random.default_rng(q)
    for _ in range(3):
        lam = int(rng.integers(1, 50))
        l = tuple(int(v) for v in rng.integers(0, q, 4))
        assert abs(kloosterman_bruteforce(KloostermanParams(4, lam, q, l)) - naive_K(4, lam, q, l)) < 1e-10


@pytest.mark.parametrize("d", [4, 5])
def test_oracle_equivalence(d):
    rng = np.random.default_rng(100 + d)
    for q in range(1, 25):
        for _ in range(20):
            lam = int(rng.integers(1, 10**4))
            l = tuple(int(v) for v in rng.integers(0, q, d))
            p = KloostermanParams(d, lam, q, l)
            assert abs(kloosterman_factored(p) - kloosterman_bruteforce(p)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 500), st.integers(0, 10**6))
def test_structure(q, lam, seed):
    rng = np.random.default_rng(seed)
    l = tuple(int(v) for v in rng.integers(-30, 30, 4))
    K = kloosterman_factored(KloostermanParams(4, lam, q, l))
    # lambda and l only matter mod q; K is real; |K| <= phi(q)
    assert abs(K - kloosterman_factored(KloostermanParams(4, lam + q, q, l))) < 1e-12
    assert abs(K - kloosterman_factored(KloostermanParams(4, lam, q, tuple(v + q for v in l)))) < 1e-12
    assert abs(K - kloosterman_factored(KloostermanParams(4, lam, q, tuple(-v for v in l)))) < 1e-12
    assert abs(K.imag) < 1e-9
    assert abs(K) <= euler_phi(q) + 1e-12


def test_prime_zero_l_real():
    for q in (3, 5, 7, 11, 13):
        for lam in (1, 2, 10):
            assert abs(kloosterman_bruteforce(KloostermanParams(4, lam, q)).imag) < 1e-9


def test_budgets():
    with pytest.raises(ResourceError):
        kloosterman_bruteforce(KloostermanParams(5, 1, 60))
    with pytest.raises(ResourceError):
        kloosterman_factored(KloostermanParams(4, 1, 30), budget=100)
    with pytest.raises(ValueError):
        KloostermanParams(4, 1, 3, (1, 2))


def test_table_and_many_agree():
    T = kloosterman_table(4, 5, 6)
    ls = np.array(list(product(range(6), repeat=4)))
    assert np.allclose(T.ravel(), kloosterman_many(4, 5, 6, ls), atol=1e-12)


def test_sup():
    assert abs(kloosterman_sup(4, 9, 1) - 1) < 1e-12
    # l = 0 gives 0, but l = (1,1,1,1) gives g(1,1;2)^4 / 16 = 1 in modulus
    literal = max(abs(naive_K(4, 3, 2, l)) for l in product(range(2), repeat=4))
    assert abs(kloosterman_sup(4, 3, 2) - literal) < 1e-12
    assert abs(literal - 1) < 1e-12
    s = kloosterman_sup_detail(4, 3, 40, l_samples=16)
    assert not s.exact and s.n_evaluated == 17
    with pytest.raises(ValueError):
        kloosterman_sup(4, 3, 201)


def test_sup_ratio_bounded():
    ratios = [kloosterman_sup(4, lam, q) / magyar_sup_bound(4, lam, q)
              for lam in range(3, 200, 4) for q in range(1, 13)]
    assert max(ratios) < 10


def test_q_sum():
    assert abs(kloosterman_q_sum(4, 1) - 1) < 1e-12
    assert abs(kloosterman_q_sum(4, 3) - 1) < 1e-12
    assert kloosterman_q_sum(4, 50, "random", seed=3) > 0
    with pytest.raises(ValueError):
        kloosterman_q_sum(4, 50, "bogus")
    with pytest.raises(ResourceError):
        kloosterman_q_sum(4, 10**4 + 1)


def test_rho_sum():
    assert rho_weighted_sum(-1.5, 1) == 1
    assert abs(rho_weighted_sum(0, 4) - (1 + np.sqrt(2))) < 1e-12


def test_singular_series():
    assert abs(singular_series_partial(4, 5, 1) - 1) < 1e-12
    # the a-sum over U_2 with l = 0 vanishes in d = 4 for odd lambda
    assert abs(singular_series_partial(4, 5, 2) - 1) < 1e-12
