"""Frequency-side objects: the cutoff Psi, the Fourier transform of the
normalized surface measure, the exact discrete multiplier of A_lambda, and
the main/error decomposition

    A^(xi) = sum_{q <= sqrt(lam)} sum_l K(lam, q, l) Psi(q xi - l) dsigma^(xi - l/q) + E^(xi)

with its q-slices and the low/high frequency split of each slice.

Frequencies are rows of an array of shape (n, d); a single frequency may be
passed as a 1-d vector.
"""
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import product
from math import gamma, isqrt, pi, sqrt

import numpy as np

from . import kernels
from .bessel import normalized_jv
from .expsum import _factored_many, singular_series_partial
from .lattice import count_representations, enumerate_sphere

PSI_INNER = 1.0 / 8.0
PSI_OUTER = 1.0 / 4.0

PIECES = ("full_main", "q_slice", "low", "high", "error", "discrete")
NORMALIZATIONS = ("unit", "hardy_littlewood", "raw")
BUMP_SCALES = ("q_sqrt_lambda", "sqrt_lambda")


def to_torus(xi):
    """Canonical representatives in [-1/2, 1/2)."""
    xi = np.asarray(xi, dtype=float)
    return xi - np.floor(xi + 0.5)


def _smooth_step(s):
    # h(s) = f(s) / (f(s) + f(1 - s)),  f(s) = exp(-1/s) for s > 0
    s = np.asarray(s, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        f0 = np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)
        f1 = np.where(s < 1, np.exp(-1.0 / np.where(s < 1, 1.0 - s, 1.0)), 0.0)
    return f0 / (f0 + f1)


def bump_1d(t):
    """psi(t): 1 on |t| <= 1/8, 0 on |t| >= 1/4, smooth in between."""
    a = np.abs(np.asarray(t, dtype=float))
    out = _smooth_step((PSI_OUTER - a) / (PSI_OUTER - PSI_INNER))
    out = np.where(a <= PSI_INNER, 1.0, out)
    return np.where(a >= PSI_OUTER, 0.0, out)


def psi_rd(x):
    """Psi on R^d: product of bump_1d over the last axis."""
    return np.prod(bump_1d(x), axis=-1)


def psi(xi):
    """Psi at torus points xi."""
    return psi_rd(to_torus(xi))


def psi_scaled(B, xi):
    """Psi_B(xi) = Psi(B xi); xi is a point of R^d (no torus reduction)."""
    if B <= 0:
        raise ValueError("scale must be positive")
    return psi_rd(B * np.asarray(xi, dtype=float))


def surface_ft(d, lam, xi):
    """Fourier transform of the normalized surface measure on the sphere of
    radius sqrt(lam) in R^d, at xi in R^d (convention int e(-x.xi) dsigma)."""
    xi = np.asarray(xi, dtype=float)
    r = np.sqrt(np.sum(xi * xi, axis=-1))
    return surface_ft_radial(d, np.sqrt(lam) * r)


def surface_ft_radial(d, r):
    """dsigma_1^ at |xi| = r."""
    return normalized_jv((d - 2) / 2.0, 2.0 * pi * np.asarray(r, dtype=float))


@lru_cache(maxsize=64)
def _gl(n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def surface_ft_quadrature(d, lam, xi, nodes=None):
    """Independent oracle for surface_ft: product Gauss-Legendre quadrature
    over angular coordinates of the unit sphere.

    The frame is rotated about the first axis so that xi lies in the span of
    the first two axes (not along the polar axis); the remaining angles carry
    only the weight sin^k and integrate out.
    """
    xi = np.asarray(xi, dtype=float) * sqrt(lam)
    if d == 2:
        n = nodes or int(2 * pi * np.linalg.norm(xi)) + 60
        th, w = _gl(n, 0.0, 2 * pi)
        ph = np.cos(th) * xi[0] + np.sin(th) * xi[1]
        return float(np.dot(w, np.cos(2 * pi * ph)) / w.sum())
    a = xi[0]
    b = sqrt(max(float(xi @ xi) - a * a, 0.0))
    n = nodes or int(2 * pi * np.hypot(a, b)) + 60
    t1, w1 = _gl(n, 0.0, pi)
    t2, w2 = _gl(n, 0.0, pi)
    dens1 = w1 * np.sin(t1) ** (d - 2)
    dens2 = w2 * np.sin(t2) ** (d - 3)
    x1 = np.cos(t1)[:, None]
    x2 = np.sin(t1)[:, None] * np.cos(t2)[None, :]
    ph = a * x1 + b * x2
    W = dens1[:, None] * dens2[None, :]
    # real part only: the measure is symmetric under x -> -x
    return float(np.sum(W * np.cos(2 * pi * ph)) / W.sum())


def surface_ft_decay(d, lam, r_grid, n_dirs=8, seed=0, fine=20000):
    """Decay rows for |dsigma_lam^| along radii r = |sqrt(lam) xi|.

    For each r in r_grid reports the sup over n_dirs random directions of
    |dsigma_lam^| at |sqrt(lam) xi| = r, and the upper envelope
    env(r) = max_{s >= r} |dsigma^| measured on a fine grid.
    Returns (rows, slope) where slope is the least-squares log-log slope of
    the envelope.
    """
    r_grid = np.asarray(r_grid, dtype=float)
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(n_dirs, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    # extend past the last radius so every envelope point sees a full oscillation
    s = np.linspace(r_grid.min(), r_grid.max() + 2.0, fine)
    env_fine = np.maximum.accumulate(np.abs(surface_ft_radial(d, s))[::-1])[::-1]
    env = np.maximum(np.interp(r_grid, s, env_fine), np.abs(surface_ft_radial(d, r_grid)))
    rows = []
    for r, e in zip(r_grid, env):
        xi = dirs * (r / sqrt(lam))
        sup = float(np.abs(surface_ft(d, lam, xi)).max())
        rows.append({"d": d, "lam": lam, "r": float(r), "sup_abs": sup, "envelope": float(e),
                     "predicted_exponent": -(d - 1) / 2.0, "seed": seed})
    slope = float(np.polyfit(np.log(r_grid), np.log(env), 1)[0])
    return rows, slope


@lru_cache(maxsize=32)
def _shell(d, lam):
    return enumerate_sphere(d, lam)


def discrete_multiplier(d, lam, xi):
    """sigma_lam^(xi) = N(lam)^-1 sum_{|m|^2 = lam} e(-m.xi)."""
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 1
    shell = _shell(d, int(lam))
    vals = kernels.shell_trig_sum(shell.points, np.atleast_2d(xi)) / shell.count
    return complex(vals[0]) if single else vals


@dataclass(frozen=True)
class MultiplierSpec:
    d: int
    lam: int
    q_max: int = None
    alpha: float = 1.0
    piece: str = "full_main"
    q: int = None
    bump_scale: str = "q_sqrt_lambda"
    normalization: str = "unit"

    def __post_init__(self):
        qm = isqrt(self.lam) if self.q_max is None else int(self.q_max)
        object.__setattr__(self, "q_max", qm)
        if self.piece not in PIECES:
            raise ValueError(f"unknown piece {self.piece!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.bump_scale not in BUMP_SCALES:
            raise ValueError(f"unknown bump scale {self.bump_scale!r}")
        if not 0 <= qm <= isqrt(self.lam):
            raise ValueError(f"q_max={qm} must lie in [0, isqrt(lam)]")
        if self.piece in ("q_slice", "low", "high"):
            if self.q is None or not 1 <= self.q <= qm:
                raise ValueError(f"piece {self.piece} needs 1 <= q <= q_max")
        if self.piece in ("low", "high"):
            if not self.q <= self.alpha <= sqrt(self.lam):
                raise ValueError("low/high split needs q <= alpha <= sqrt(lam)")

    def with_piece(self, piece, q=None):
        return replace(self, piece=piece, q=q)


@lru_cache(maxsize=256)
def normalization_constant(d, lam, q_max, mode="unit"):
    """Scalar applied to every main-term slice.

    ``unit`` makes the main term equal 1 at xi = 0 (so E^(0) = 0);
    ``hardy_littlewood`` uses pi^(d/2) lam^(d/2-1) / (Gamma(d/2) N(lam));
    ``raw`` is the bare sum.
    """
    if mode == "raw":
        return 1.0
    if mode == "unit":
        s = singular_series_partial(d, lam, q_max)
        if abs(s) < 1e-12:
            raise ZeroDivisionError(f"partial singular series vanishes for d={d}, lam={lam}")
        return 1.0 / s
    if mode == "hardy_littlewood":
        return pi ** (d / 2) * lam ** (d / 2 - 1) / (gamma(d / 2) * count_representations(d, lam))
    raise ValueError(f"unknown normalization {mode!r}")


def _bump_scale(spec, q, low):
    if not low:
        return float(q)
    if spec.bump_scale == "q_sqrt_lambda":
        return q * sqrt(spec.lam) / spec.alpha
    return sqrt(spec.lam) / spec.alpha


def slice_raw(d, lam, q, xi, B):
    """sum_l K(lam, q, l) Psi(B (xi - l/q)) dsigma_lam^(xi - l/q), unnormalized.

    xi has shape (n, d) and is reduced to the torus; l ranges over the
    integer vectors whose bump support contains xi.
    """
    xi = to_torus(np.atleast_2d(xi))
    n = len(xi)
    out = np.zeros(n, dtype=np.complex128)
    center = np.rint(q * xi)
    reach = max(int(np.ceil(q / (4.0 * B) - 0.5)), 0)
    for off in product(range(-reach, reach + 1), repeat=d):
        l = center + np.array(off, dtype=float)
        delta = xi - l / q
        bump = psi_rd(B * delta)
        idx = np.nonzero(bump)[0]
        if not len(idx):
            continue
        lmod = l[idx].astype(np.int64) % q
        uniq, inv = np.unique(lmod, axis=0, return_inverse=True)
        K = _factored_many(d, lam, q, uniq)[inv.ravel()]
        ft = surface_ft(d, lam, delta[idx])
        out[idx] += K * bump[idx] * ft
    return out


def evaluate(spec, xi):
    """Value of the selected piece of the decomposition at xi."""
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 1
    X = np.atleast_2d(xi)
    d, lam = spec.d, spec.lam
    if X.shape[1] != d:
        raise ValueError(f"frequency has dimension {X.shape[1]}, expected {d}")
    if spec.piece == "discrete":
        vals = discrete_multiplier(d, lam, X)
    else:
        c = normalization_constant(d, lam, spec.q_max, spec.normalization)
        if spec.piece == "q_slice":
            vals = c * slice_raw(d, lam, spec.q, X, float(spec.q))
        elif spec.piece == "low":
            vals = c * slice_raw(d, lam, spec.q, X, _bump_scale(spec, spec.q, True))
        elif spec.piece == "high":
            vals = c * (slice_raw(d, lam, spec.q, X, float(spec.q))
                        - slice_raw(d, lam, spec.q, X, _bump_scale(spec, spec.q, True)))
        else:
            main = np.zeros(len(X), dtype=np.complex128)
            for q in range(1, spec.q_max + 1):
                main += slice_raw(d, lam, q, X, float(q))
            main *= c
            vals = main if spec.piece == "full_main" else discrete_multiplier(d, lam, X) - main
    return complex(vals[0]) if single else vals


def main_term(spec, xi):
    """Full main term (piece 'full_main') or one q-slice (piece 'q_slice')."""
    if spec.piece not in ("full_main", "q_slice"):
        raise ValueError("main_term evaluates the full_main or q_slice pieces")
    return evaluate(spec, xi)


def low_high_split(spec, xi):
    """Low (piece 'low') or high (piece 'high') part of the q-slice."""
    if spec.piece not in ("low", "high"):
        raise ValueError("low_high_split evaluates the low or high pieces")
    return evaluate(spec, xi)


def error_multiplier(d, lam, xi, q_max=None, normalization="unit"):
    """E^ = A^ - M^ with the full q-range q <= isqrt(lam) by default."""
    spec = MultiplierSpec(d, lam, q_max=q_max, piece="error", normalization=normalization)
    return evaluate(spec, xi)


def l_support_count(q, xi):
    """Number of l in Z_q^d with Psi(q xi - l) != 0, checked over all of Z_q^d.

    q xi - l is taken at its representative nearest the origin modulo q.
    """
    xi = to_torus(np.asarray(xi, dtype=float))
    d = len(xi)
    grid = np.stack(np.meshgrid(*[np.arange(q)] * d, indexing="ij"), -1).reshape(-1, d)
    diff = q * xi[None, :] - grid
    diff -= q * np.floor(diff / q + 0.5)
    return int(np.count_nonzero(psi_rd(diff)))


@dataclass(frozen=True)
class SupStrategy:
    """Sample design for a lower bound on sup |E^| over the torus."""
    grid: int = 5
    l_per_q: int = 4
    n_random: int = 256
    seed: int = 0
    offset: float = 1.0 / 16.0

    def describe(self):
        return (f"grid={self.grid},l_per_q={self.l_per_q},n_random={self.n_random},"
                f"seed={self.seed},offset={self.offset}")


def sup_sample_points(d, lam, strategy=SupStrategy()):
    """Deterministic frequency sample: uniform grid, points at and near l/q
    for q <= isqrt(lam) (offset +-offset/(q sqrt(lam)) per coordinate), and
    seeded uniform random points."""
    rng = np.random.default_rng(strategy.seed)
    parts = []
    if strategy.grid > 0:
        axis = np.arange(strategy.grid) / strategy.grid - 0.5
        parts.append(np.stack(np.meshgrid(*[axis] * d, indexing="ij"), -1).reshape(-1, d))
    for q in range(1, isqrt(lam) + 1):
        ls = np.vstack([np.zeros((1, d)), rng.integers(0, q, size=(strategy.l_per_q, d))])
        signs = rng.choice([-1.0, 1.0], size=ls.shape)
        step = strategy.offset / (q * sqrt(lam))
        parts.append(ls / q)
        parts.append(ls / q + signs * step)
    if strategy.n_random > 0:
        parts.append(rng.random((strategy.n_random, d)) - 0.5)
    return to_torus(np.vstack(parts))


def error_sup_sample(d, lam, strategy=SupStrategy(), normalization="unit"):
    """max |E_lam^(xi)| over sup_sample_points; a lower bound on the sup norm."""
    pts = sup_sample_points(d, lam, strategy)
    return float(np.abs(error_multiplier(d, lam, pts, normalization=normalization)).max())
