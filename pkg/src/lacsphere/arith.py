"""Elementary number theory: units, multiplicative functions, rho(q, lambda),
Ramanujan sums and one-dimensional quadratic Gauss sums.

All moduli handled here are small (at most ~1e4), so factorization is plain
trial division.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value, modulus):
        return cls(int(value) % modulus, modulus)

    def __int__(self):
        return self.value


def e(t):
    """Additive character exp(2 pi i t)."""
    return np.exp(1j * TWO_PI * np.asarray(t, dtype=float))


def e_frac(num, q):
    """exp(2 pi i num / q) with the numerator reduced mod q first."""
    return np.exp(1j * TWO_PI * (np.asarray(num, dtype=np.int64) % q) / q)


def _check_positive(n, name="n"):
    if int(n) != n or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")


@lru_cache(maxsize=4096)
def factorize(n):
    """Prime factorization of n as a tuple of (prime, exponent) pairs."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n):
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def moebius(n):
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n):
    _check_positive(n)
    small, large = [], []
    for t in range(1, isqrt(n) + 1):
        if n % t == 0:
            small.append(t)
            if t * t != n:
                large.append(n // t)
    return small + large[::-1]


def units(q):
    """Reduced residues mod q in ascending order. U_1 is taken to be {0}."""
    _check_positive(q, "q")
    if q == 1:
        return [Residue(0, 1)]
    return [Residue(a, q) for a in range(q) if gcd(a, q) == 1]


@lru_cache(maxsize=4096)
def unit_array(q):
    """units(q) as an int64 array; cached and read-only."""
    arr = np.array([r.value for r in units(q)], dtype=np.int64)
    arr.setflags(write=False)
    return arr


def rho(q, lam):
    """gcd(q1, lam) * 2**r where q = q1 * 2**r with q1 odd."""
    _check_positive(q, "q")
    _check_positive(lam, "lambda")
    r = (q & -q).bit_length() - 1
    return gcd(q >> r, lam) << r


def ramanujan_sum(q, n):
    """c_q(n) via the closed form mu(q/g) phi(q) / phi(q/g), g = gcd(q, n)."""
    _check_positive(q, "q")
    g = gcd(q, int(n) % q) if q > 1 else 1
    m = q // g
    return moebius(m) * euler_phi(q) // euler_phi(m)


def ramanujan_sum_direct(q, n):
    """Brute-force sum of e(a n / q) over a in U_q (complex)."""
    return complex(e_frac(unit_array(q) * (int(n) % q), q).sum())


def _as_int(r):
    return r.value if isinstance(r, Residue) else int(r)


def gauss_sum(a, b, q):
    """g(a, b; q) = sum_{x mod q} e((a x^2 + b x) / q) by direct summation."""
    _check_positive(q, "q")
    a, b = _as_int(a) % q, _as_int(b) % q
    x = np.arange(q, dtype=np.int64)
    return complex(e_frac(a * x * x + b * x, q).sum())


@lru_cache(maxsize=512)
def gauss_table(q):
    """Table G[i, b] = g(U_q[i], b; q) for all units and all b mod q.

    Each entry is a direct O(q) sum; the table is cached and read-only.
    """
    _check_positive(q, "q")
    a = unit_array(q)
    x = np.arange(q, dtype=np.int64)
    quad = e_frac(np.outer(a, x * x), q)  # (phi, q)
    lin = e_frac(np.outer(np.arange(q, dtype=np.int64), x), q)  # (b, x)
    table = quad @ lin.T
    table.setflags(write=False)
    return table
