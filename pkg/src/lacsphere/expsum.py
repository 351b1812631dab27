"""Kloosterman-type sums

    K(lam, q, l) = q^-d sum_{a in U_q} sum_{x in Z_q^d} e((-lam a + a|x|^2 + l.x) / q)

evaluated two independent ways, and the bounds used to control them.
"""
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from . import kernels
from .arith import e_frac, euler_phi, gauss_table, rho, unit_array
from .errors import ResourceError

BRUTE_BUDGET = 10**8
FACTORED_BUDGET = 10**9
SUP_EXACT_LIMIT = 10**6


@dataclass(frozen=True)
class KloostermanParams:
    d: int
    lam: int
    q: int
    l: tuple = field(default=())

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        l = tuple(int(v) % self.q for v in (self.l or (0,) * self.d))
        if len(l) != self.d:
            raise ValueError(f"l has {len(l)} coordinates, expected {self.d}")
        object.__setattr__(self, "l", l)


def brute_work(d, q):
    """Work of the brute-force evaluator: one visit per x plus the (a, phase) table."""
    return q**d + euler_phi(q) * q * q


def kloosterman_bruteforce(p, budget=BRUTE_BUDGET):
    """Direct summation over every (a, x) pair.

    Every x in Z_q^d is visited once and its phase pair (|x|^2, l.x) mod q is
    tallied; the a-sum is then taken over the tallies. No Gauss-sum identity
    is used, so this is independent of ``kloosterman_factored``.
    """
    q, d = p.q, p.d
    if brute_work(d, q) > budget:
        raise ResourceError(f"brute force K with d={d}, q={q} exceeds budget {budget}")
    hist = kernels.phase_histogram(q, np.array(p.l, dtype=np.int64)).reshape(q, q)
    a = unit_array(q)
    Q = np.arange(q, dtype=np.int64)
    # phase(a, Q, L) = -lam a + a Q + L
    total = 0j
    nz_Q, nz_L = np.nonzero(hist)
    counts = hist[nz_Q, nz_L].astype(float)
    for av in a:
        total += np.dot(counts, e_frac(-p.lam * av + av * Q[nz_Q] + nz_L, q))
    return complex(total / q**d)


def _factored_many(d, lam, q, ls):
    """K(lam, q, l) for every row of the integer array ``ls`` (shape (n, d))."""
    G = gauss_table(q)  # (phi, q)
    coef = e_frac(-lam * unit_array(q), q) / float(q) ** d
    ls = np.asarray(ls, dtype=np.int64) % q
    prod = np.ones((G.shape[0], len(ls)), dtype=np.complex128)
    for i in range(d):
        prod *= G[:, ls[:, i]]
    return coef @ prod


def kloosterman_factored(p, budget=FACTORED_BUDGET):
    """q^-d sum_a e(-lam a/q) prod_i g(a, l_i; q)."""
    if p.q * euler_phi(p.q) * p.d > budget:
        raise ResourceError(f"factored K with d={p.d}, q={p.q} exceeds budget {budget}")
    return complex(_factored_many(p.d, p.lam, p.q, np.array([p.l]))[0])


def kloosterman_many(d, lam, q, ls):
    """Vectorized factored evaluator over many l vectors."""
    ls = np.asarray(ls, dtype=np.int64).reshape(-1, d)
    return _factored_many(d, lam, q, ls)


def kloosterman_table(d, lam, q):
    """Full table T[l_1, ..., l_d] = K(lam, q, l) over Z_q^d."""
    if q**d * euler_phi(q) > 10**8:
        raise ResourceError(f"K table for d={d}, q={q} is too large")
    G = gauss_table(q)
    coef = e_frac(-lam * unit_array(q), q) / float(q) ** d
    table = np.zeros((q,) * d, dtype=np.complex128)
    for c, row in zip(coef, G):
        outer = row
        for _ in range(d - 1):
            outer = np.multiply.outer(outer, row)
        table += c * outer
    return table


def singular_series_partial(d, lam, q_max):
    """sum_{q <= q_max} K(lam, q, 0); real by a <-> -a symmetry."""
    zero = np.zeros((1, d), dtype=np.int64)
    return float(sum(_factored_many(d, lam, q, zero)[0].real for q in range(1, q_max + 1)))


@dataclass
class SupResult:
    value: float
    exact: bool
    n_evaluated: int


def kloosterman_sup(d, lam, q, l_samples=256, seed=0, exact_limit=SUP_EXACT_LIMIT):
    """max_l |K(lam, q, l)|.

    Exact over all of Z_q^d when q^d <= exact_limit; otherwise the max over
    l = 0 and ``l_samples`` seeded random l, which is only a lower bound.
    """
    return kloosterman_sup_detail(d, lam, q, l_samples, seed, exact_limit).value


def kloosterman_sup_detail(d, lam, q, l_samples=256, seed=0, exact_limit=SUP_EXACT_LIMIT):
    if q > 200:
        raise ValueError("kloosterman_sup supports q <= 200")
    if q**d <= exact_limit:
        T = kloosterman_table(d, lam, q)
        return SupResult(float(np.abs(T).max()), True, T.size)
    rng = np.random.default_rng(seed)
    ls = np.vstack([np.zeros((1, d), dtype=np.int64),
                    rng.integers(0, q, size=(l_samples, d))])
    vals = kloosterman_many(d, lam, q, ls)
    return SupResult(float(np.abs(vals).max()), False, len(ls))


def kloosterman_q_sum(d, lam, l_strategy="zero", seed=0):
    """sum_{q <= isqrt(lam)} |K(lam, q, l)| with l = 0 or a seeded random l per q."""
    if lam > 10**4:
        raise ResourceError("kloosterman_q_sum supports lambda <= 1e4")
    rng = np.random.default_rng(seed)
    total = 0.0
    for q in range(1, isqrt(lam) + 1):
        if l_strategy == "zero":
            l = np.zeros((1, d), dtype=np.int64)
        elif l_strategy == "random":
            l = rng.integers(0, q, size=(1, d))
        else:
            raise ValueError(f"unknown l_strategy {l_strategy!r}")
        total += abs(_factored_many(d, lam, q, l)[0])
    return total


def rho_weighted_sum(beta, lam):
    """sum_{q <= lam^(1/2)} q^beta rho(q, lam)^(1/2)."""
    if lam < 1 or lam > 10**6:
        raise ValueError("rho_weighted_sum supports 1 <= lambda <= 1e6")
    qs = range(1, isqrt(lam) + 1)
    return float(sum(q**beta * rho(q, lam) ** 0.5 for q in qs))


def magyar_sup_bound(d, lam, q):
    """q^(-d/2 + 1/2) rho(q, lam)^(1/2), the sup-bound shape with epsilon = 0."""
    return q ** (-d / 2 + 0.5) * rho(q, lam) ** 0.5
