"""Lattice points on spheres |m|^2 = lambda in Z^d: enumeration, counting,
admissibility and lacunary radius sequences."""
import csv
from dataclasses import dataclass
from math import isqrt
from threading import Lock

import numpy as np

from . import kernels
from .arith import divisors
from .errors import ResourceError

# Largest lambda accepted by enumerate_sphere, per dimension. Counting without
# storing points is allowed COUNT_FACTOR times further.
ENUM_BUDGET = {2: 10**6, 3: 10**6, 4: 10**5, 5: 10**4, 6: 2000, 7: 500, 8: 200}
COUNT_FACTOR = 10


@dataclass(frozen=True)
class SphereShell:
    d: int
    lam: int
    points: np.ndarray  # (count, d) int64, lexicographic

    @property
    def count(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class LacunarySequence:
    d: int
    radii: tuple
    admissible_only: bool = True

    def __post_init__(self):
        r = self.radii
        if not r:
            raise ValueError("a lacunary sequence needs at least one radius")
        if any(x < 1 for x in r):
            raise ValueError("radii must be positive")
        for a, b in zip(r, r[1:]):
            if not b > 2 * a:
                raise ValueError(f"not lacunary: {b} <= 2*{a}")
        if self.d == 4 and self.admissible_only and any(x % 4 == 0 for x in r):
            raise ValueError("d = 4 radii must avoid multiples of 4")

    def __iter__(self):
        return iter(self.radii)

    def __len__(self):
        return len(self.radii)

    def __getitem__(self, j):
        return self.radii[j]


def _check(d, lam, budget):
    if not 2 <= d <= 8:
        raise ValueError(f"dimension must be in [2, 8], got {d}")
    if int(lam) != lam or lam < 0:
        raise ValueError(f"lambda must be a nonnegative integer, got {lam!r}")
    if lam > budget:
        raise ResourceError(f"lambda={lam} exceeds the budget {budget} for d={d}")


def enumerate_sphere(d, lam, budget=None):
    """All m in Z^d with |m|^2 = lam, in lexicographic order."""
    _check(d, lam, ENUM_BUDGET.get(d, 0) if budget is None else budget)
    pts = kernels.enumerate_shell(d, int(lam))
    pts.setflags(write=False)
    return SphereShell(d, int(lam), pts)


class _RepTables:
    """r_k(n) tables for n <= limit, built lazily and extended by rebuilding.

    Reads after construction are lock-free; (re)builds happen under a lock.
    """

    def __init__(self):
        self._lock = Lock()
        self._limit = -1
        self._tables = {}

    def get(self, k, limit):
        if limit > self._limit or k not in self._tables:
            with self._lock:
                if limit > self._limit:
                    self._tables = {}
                    self._limit = max(limit, 2 * self._limit, 1024)
                if k not in self._tables:
                    self._tables[k] = self._build(k, self._limit)
        return self._tables[k]

    def _build(self, k, limit):
        if k == 0:
            t = np.zeros(limit + 1, dtype=np.int64)
            t[0] = 1
            return t
        if k == 2:
            # direct two-square enumeration
            r = isqrt(limit)
            x = np.arange(-r, r + 1, dtype=np.int64) ** 2
            n = (x[:, None] + x[None, :]).ravel()
            return np.bincount(n[n <= limit], minlength=limit + 1).astype(np.int64)
        prev = self._tables.get(k - 1)
        if prev is None:
            prev = self._tables[k - 1] = self._build(k - 1, limit)
        out = np.zeros(limit + 1, dtype=np.int64)
        r = isqrt(limit)
        for x in range(-r, r + 1):
            s = x * x
            out[s:] += prev[: limit + 1 - s]
        return out


_TABLES = _RepTables()


def count_representations(d, lam, budget=None):
    """r_d(lam) = #{m in Z^d : |m|^2 = lam}, via r_{d//2} * r_{d - d//2}."""
    _check(d, lam, COUNT_FACTOR * ENUM_BUDGET.get(d, 0) if budget is None else budget)
    lam = int(lam)
    a, b = d // 2, d - d // 2
    ta = _TABLES.get(a, lam)
    tb = ta if b == a else _TABLES.get(b, lam)
    return int(np.dot(ta[: lam + 1], tb[lam::-1]))


def representation_table(d, limit):
    """Array of r_d(n) for 0 <= n <= limit."""
    _check(d, limit, COUNT_FACTOR * ENUM_BUDGET.get(d, 0))
    return _TABLES.get(d, limit)[: limit + 1].copy()


def r4_jacobi(lam):
    """Jacobi: r_4(n) = 8 * sum of divisors of n not divisible by 4."""
    if int(lam) != lam or lam < 1:
        raise ValueError("lambda must be a positive integer")
    return 8 * sum(t for t in divisors(int(lam)) if t % 4)


def is_admissible(d, lam):
    if d < 4:
        raise ValueError("admissibility is defined for d >= 4")
    return d >= 5 or lam % 4 != 0


def _admissible(d, lam):
    return d != 4 or lam % 4 != 0


def make_lacunary(d, seed, count):
    """Greedy lacunary sequence: lam_{j+1} = least admissible integer > 2 lam_j."""
    if seed < 1 or count < 1:
        raise ValueError("seed and count must be positive")
    lam = int(seed)
    while not _admissible(d, lam):
        lam += 1
    radii = [lam]
    while len(radii) < count:
        lam = 2 * radii[-1] + 1
        while not _admissible(d, lam):
            lam += 1
        radii.append(lam)
    return LacunarySequence(d, tuple(radii), admissible_only=True)


def hl_ratio(d, lam):
    """N(lam) / lam^(d/2 - 1)."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    return count_representations(d, lam) / lam ** (d / 2 - 1)


def write_shell_csv(shell, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"m{i + 1}" for i in range(shell.d)])
        w.writerows(shell.points.tolist())


def read_shell_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    d = len(rows[0])
    pts = np.array([[int(v) for v in r] for r in rows[1:]], dtype=np.int64).reshape(-1, d)
    lam = int((pts[0] ** 2).sum()) if len(pts) else 0
    return SphereShell(d, lam, pts)
