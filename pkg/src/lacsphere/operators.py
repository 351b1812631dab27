"""Spatial operators on finitely supported functions on Z^d: spherical
averages, the lacunary maximal function and its stopping-time linearization,
multiplier pieces applied on periodic grids, the M1/M2 split, norms, and the
exponent algebra of the restricted weak-type argument."""
import csv
import struct
from dataclasses import dataclass
from itertools import product
from math import ceil, isqrt, sqrt

import numpy as np
import scipy.fft as sfft

from .errors import ResourceError
from .expsum import kloosterman_table
from .lattice import LacunarySequence, enumerate_sphere, is_admissible
from .multiplier import (
    MultiplierSpec, _bump_scale, bump_1d, normalization_constant, surface_ft_radial,
)

CELL_BUDGET = 2 * 10**7


def _ceil_sqrt(lam):
    r = isqrt(lam)
    return r if r * r == lam else r + 1


# --------------------------------------------------------------------------
# Grid functions

@dataclass(frozen=True)
class GridFunction:
    """Values on the cube {-R..R}^d (side M = 2R + 1), zero elsewhere on Z^d.

    ``error`` carries an estimate of the discretization error of the values
    (zero for exact spatial operators).
    """
    d: int
    values: np.ndarray
    error: float = 0.0

    def __post_init__(self):
        v = self.values
        if v.ndim != self.d or len(set(v.shape)) != 1 or v.shape[0] % 2 == 0:
            raise ValueError(f"values must be an odd-sided cube in {self.d} dimensions, got {v.shape}")

    @property
    def M(self):
        return self.values.shape[0]

    @property
    def radius(self):
        return (self.M - 1) // 2

    @classmethod
    def zeros(cls, d, M, dtype=float):
        return cls(d, np.zeros((M,) * d, dtype=dtype))

    @classmethod
    def delta(cls, d, M=1):
        g = np.zeros((M,) * d)
        g[(M // 2,) * d] = 1.0
        return cls(d, g)

    @classmethod
    def indicator(cls, d, M, points):
        g = np.zeros((M,) * d)
        pts = np.asarray(points, dtype=np.int64).reshape(-1, d) + M // 2
        if len(pts) and (pts.min() < 0 or pts.max() >= M):
            raise ValueError("points lie outside the box")
        g[tuple(pts.T)] = 1.0
        return cls(d, g)

    def at(self, n):
        idx = tuple(int(c) + self.radius for c in n)
        if any(i < 0 or i >= self.M for i in idx):
            return 0.0
        return self.values[idx]

    def padded(self, M):
        """Same function on a larger centered box."""
        if M < self.M or (M - self.M) % 2:
            raise ValueError("can only pad to a larger odd side")
        p = (M - self.M) // 2
        return GridFunction(self.d, np.pad(self.values, p), self.error)

    def cropped(self, M):
        if M > self.M or (self.M - M) % 2:
            raise ValueError("can only crop to a smaller odd side")
        c = (self.M - M) // 2
        sl = (slice(c, c + M),) * self.d
        return GridFunction(self.d, self.values[sl].copy(), self.error)

    def support_points(self):
        return np.argwhere(self.values != 0) - self.radius

    # serialization ------------------------------------------------------
    _MAGIC = b"LSGRID01"
    _HEADER = struct.Struct("<8sqqq")

    def to_bytes(self):
        """Header (magic, d, M, kind: 0 real / 1 complex) then little-endian
        float64 values in C order, complex as interleaved (re, im)."""
        cplx = np.iscomplexobj(self.values)
        head = self._HEADER.pack(self._MAGIC, self.d, self.M, int(cplx))
        arr = self.values.astype("<c16" if cplx else "<f8", copy=False)
        return head + np.ascontiguousarray(arr).tobytes()

    @classmethod
    def from_bytes(cls, data):
        magic, d, M, kind = cls._HEADER.unpack_from(data)
        if magic != cls._MAGIC:
            raise ValueError("not a grid function file")
        dt = "<c16" if kind else "<f8"
        vals = np.frombuffer(data, dtype=dt, offset=cls._HEADER.size).reshape((M,) * d)
        return cls(d, vals.astype(np.complex128 if kind else np.float64))

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())

    def write_csv(self, path, max_cells=10**5):
        if self.values.size > max_cells:
            raise ResourceError(f"{self.values.size} cells is too many for CSV output")
        cplx = np.iscomplexobj(self.values)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"n{i + 1}" for i in range(self.d)] + (["re", "im"] if cplx else ["value"]))
            for idx in np.ndindex(self.values.shape):
                n = [i - self.radius for i in idx]
                v = self.values[idx]
                w.writerow(n + ([repr(float(v.real)), repr(float(v.imag))] if cplx else [repr(float(v))]))

    @classmethod
    def read_csv(cls, path):
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        head = rows[0]
        d = sum(h.startswith("n") for h in head)
        cplx = "im" in head
        pts = np.array([[int(x) for x in r[:d]] for r in rows[1:]], dtype=np.int64)
        R = int(np.abs(pts).max()) if len(pts) else 0
        vals = np.zeros((2 * R + 1,) * d, dtype=np.complex128 if cplx else float)
        for p, r in zip(pts, rows[1:]):
            vals[tuple(p + R)] = complex(float(r[d]), float(r[d + 1])) if cplx else float(r[d])
        return cls(d, vals)


# --------------------------------------------------------------------------
# Exact spatial operators

def _check_radius(d, lam):
    if d >= 4 and not is_admissible(d, lam):
        raise ValueError(f"lambda={lam} is not admissible in dimension {d}")


def spherical_average(f, lam, out_M=None):
    """A_lam f(n) = N(lam)^-1 sum_{|m|^2 = lam} f(n - m), exact on Z^d.

    The output box is enlarged by ceil(sqrt(lam)) per side (or set to out_M).
    """
    _check_radius(f.d, lam)
    shell = enumerate_sphere(f.d, lam)
    grow = _ceil_sqrt(lam)
    Mo = f.M + 2 * grow if out_M is None else out_M
    if Mo < f.M + 2 * grow or (Mo - f.M) % 2:
        raise ValueError("output box too small for an exact average")
    out = np.zeros((Mo,) * f.d, dtype=np.result_type(f.values, float))
    base = (Mo - f.M) // 2
    for m in shell.points:
        sl = tuple(slice(base + c, base + c + f.M) for c in m)
        out[sl] += f.values
    out /= shell.count
    return GridFunction(f.d, out)


def _radii(seq):
    return tuple(seq.radii) if isinstance(seq, LacunarySequence) else tuple(seq)


def averages_stack(f, seq, out_M=None):
    """Array (J, M_out, ..., M_out) of A_{lam_j} f on a common box."""
    radii = _radii(seq)
    Mo = f.M + 2 * _ceil_sqrt(max(radii)) if out_M is None else out_M
    return np.stack([spherical_average(f, lam, Mo).values for lam in radii])


def lacunary_maximal(f, seq, out_M=None):
    """M_lac f = max_j |A_{lam_j} f| over the finite sequence."""
    stack = averages_stack(f, seq, out_M)
    return GridFunction(f.d, np.abs(stack).max(axis=0))


@dataclass(frozen=True)
class StoppingTime:
    """tau(n) as a 0-based index into ``radii`` for each box point."""
    index: np.ndarray
    radii: tuple

    def radius_at(self):
        return np.asarray(self.radii)[self.index]


def stopping_time_linearize(f, seq, out_M=None):
    """Smallest j attaining max_j |A_{lam_j} f(n)|, pointwise."""
    stack = averages_stack(f, seq, out_M)
    return StoppingTime(np.argmax(np.abs(stack), axis=0), _radii(seq))


def apply_stopping_time(stack, tau):
    """A_tau f(n) = A_{tau(n)} f(n) from a stack of averages."""
    return np.take_along_axis(stack, tau.index[None], axis=0)[0]


# --------------------------------------------------------------------------
# Multipliers on periodic grids

def _freq_axis(Mf, half=False):
    k = np.arange(Mf // 2 + 1) if half else sfft.fftfreq(Mf) * Mf
    return np.asarray(k, dtype=float) / Mf


def _rshape(d, Mf):
    return (Mf,) * (d - 1) + (Mf // 2 + 1,)


def _axes(d, Mf):
    return [_freq_axis(Mf, half=(i == d - 1)) for i in range(d)]


def _bcast(v, i, d):
    shape = [1] * d
    shape[i] = len(v)
    return v.reshape(shape)


def _slice_grid(d, lam, q, B, Mf):
    """Unnormalized slice sum_l K Psi(B(xi - l/q)) dsigma^(xi - l/q) on the
    rfft half-grid of Z_Mf^d. Uses separability of Psi across coordinates."""
    K = kloosterman_table(d, lam, q)
    if np.abs(K.imag).max() > 1e-9:
        raise AssertionError("Kloosterman table expected to be real")
    K = K.real
    out = np.zeros(_rshape(d, Mf))
    reach = max(int(np.ceil(q / (4.0 * B) - 0.5)), 0)
    axes = _axes(d, Mf)
    offsets = range(-reach, reach + 1)
    per_axis = []
    for xi in axes:
        xi = xi - np.floor(xi + 0.5)
        entries = []
        for o in offsets:
            l = np.rint(q * xi) + o
            delta = xi - l / q
            b = bump_1d(B * delta)
            nz = np.nonzero(b)[0]
            entries.append((nz, b[nz], delta[nz], l[nz].astype(np.int64) % q))
        per_axis.append(entries)
    for combo in product(range(len(offsets)), repeat=d):
        parts = [per_axis[i][c] for i, c in enumerate(combo)]
        if any(len(p[0]) == 0 for p in parts):
            continue
        idx = np.ix_(*[p[0] for p in parts])
        bump = 1.0
        r2 = 0.0
        lidx = []
        for i, (nz, b, delta, lm) in enumerate(parts):
            bump = bump * _bcast(b, i, d)
            r2 = r2 + _bcast(delta * delta, i, d)
            lidx.append(_bcast(lm, i, d))
        ft = surface_ft_radial(d, np.sqrt(lam * r2))
        out[idx] += K[tuple(lidx)] * bump * ft
    return out


def _discrete_grid(d, lam, Mf):
    shell = enumerate_sphere(d, lam)
    kern = np.zeros((Mf,) * d)
    np.add.at(kern, tuple((shell.points % Mf).T), 1.0 / shell.count)
    return sfft.rfftn(kern).real


def multiplier_grid(spec, Mf):
    """Selected multiplier piece sampled at xi = k / Mf on the rfft half-grid.
    All pieces are real and even, so the half-grid determines them."""
    d, lam = spec.d, spec.lam
    if spec.piece == "discrete":
        return _discrete_grid(d, lam, Mf)
    c = normalization_constant(d, lam, spec.q_max, spec.normalization)
    if spec.piece == "q_slice":
        return c * _slice_grid(d, lam, spec.q, float(spec.q), Mf)
    if spec.piece == "low":
        return c * _slice_grid(d, lam, spec.q, _bump_scale(spec, spec.q, True), Mf)
    if spec.piece == "high":
        return c * (_slice_grid(d, lam, spec.q, float(spec.q), Mf)
                    - _slice_grid(d, lam, spec.q, _bump_scale(spec, spec.q, True), Mf))
    main = np.zeros(_rshape(d, Mf))
    for q in range(1, spec.q_max + 1):
        main += _slice_grid(d, lam, q, float(q), Mf)
    main *= c
    if spec.piece == "full_main":
        return main
    return _discrete_grid(d, lam, Mf) - main


def _to_periodic(f, Mf):
    return sfft.ifftshift(f.padded(Mf).values)


def _from_periodic(arr):
    return sfft.fftshift(arr)


def _apply_real(values_periodic, mult):
    return sfft.irfftn(sfft.rfftn(values_periodic) * mult, s=values_periodic.shape)


def kernel_tail(mult, d, Mf, width=1):
    """max |kernel| over the outer layer of the periodic cell: a proxy for the
    aliasing error of the periodized kernel."""
    kern = np.abs(_from_periodic(sfft.irfftn(mult, s=(Mf,) * d)))
    R = (Mf - 1) // 2
    idx = np.indices(kern.shape) - R
    outer = np.abs(idx).max(axis=0) >= R - width + 1
    return float(kern[outer].max())


def min_resolution(f, lam):
    """Smallest odd period with no wrap-around of the exact average."""
    M = f.M + 2 * _ceil_sqrt(lam)
    return M if M % 2 else M + 1


def default_resolution(f, lam):
    """Odd M_f >= 2 (support diameter + ceil(sqrt(lam)))."""
    pts = f.support_points()
    diam = int((pts.max(axis=0) - pts.min(axis=0)).max()) + 1 if len(pts) else 1
    M = 2 * (diam + _ceil_sqrt(lam))
    return max(M + 1 if M % 2 == 0 else M, min_resolution(f, lam))


def apply_multiplier(f, spec, Mf=None, error_estimate="auto", cell_budget=CELL_BUDGET):
    """Apply a multiplier piece to f on the periodic grid Z_Mf^d.

    Returns the full periodic cell as a centered GridFunction of side Mf; its
    ``error`` field holds the quadrature error estimate (resolution doubling
    when affordable, else kernel-tail bound times ||f||_1).
    """
    if Mf is None:
        Mf = default_resolution(f, spec.lam)
    if Mf % 2 == 0:
        raise ValueError("grid resolution must be odd")
    if Mf < min_resolution(f, spec.lam):
        raise ValueError(f"resolution {Mf} is below the no-wrap minimum {min_resolution(f, spec.lam)}")
    if Mf**f.d > cell_budget:
        raise ResourceError(f"{Mf}^{f.d} cells exceeds the cell budget {cell_budget}")
    mult = multiplier_grid(spec, Mf)
    out = _apply_grid(f, mult, Mf)
    if error_estimate == "auto":
        error_estimate = "doubling" if (2 * Mf + 1) ** f.d <= cell_budget else "tail"
    if error_estimate == "doubling":
        M2 = 2 * Mf + 1
        fine = _apply_grid(f, multiplier_grid(spec, M2), M2)
        c = (M2 - Mf) // 2
        err = float(np.abs(fine[(slice(c, c + Mf),) * f.d] - out).max())
    elif error_estimate == "tail":
        err = kernel_tail(mult, f.d, Mf) * float(np.abs(f.values).sum())
    elif error_estimate == "none":
        err = 0.0
    else:
        raise ValueError(f"unknown error estimate {error_estimate!r}")
    return GridFunction(f.d, out, err)


def _apply_grid(f, mult, Mf):
    v = f.values
    if np.iscomplexobj(v):
        re = _apply_real(_to_periodic(GridFunction(f.d, v.real.copy()), Mf), mult)
        im = _apply_real(_to_periodic(GridFunction(f.d, v.imag.copy()), Mf), mult)
        return _from_periodic(re + 1j * im)
    return _from_periodic(_apply_real(_to_periodic(f, Mf), mult))


# --------------------------------------------------------------------------
# The M1 / M2 split

@dataclass(frozen=True)
class SplitParams:
    alpha: float
    sequence: object

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")

    @property
    def q_max(self):
        return int(np.floor(self.alpha))


@dataclass
class SplitResult:
    alpha: float
    pieces: dict            # m11, m12, m21, m22, m23 on the periodic cell
    a_tau: np.ndarray
    tau: StoppingTime
    quadrature_error: float
    domination_violation: float
    completeness_error: float

    @property
    def m1(self):
        return self.pieces["m11"] + self.pieces["m12"]

    @property
    def m2(self):
        return self.pieces["m21"] + self.pieces["m22"] + self.pieces["m23"]


class SplitEngine:
    """Evaluates the pieces of A_tau f <= M1 f + M2 f for indicator inputs.

    For points whose stopping radius has sqrt(lam) <= alpha the whole value
    goes to M_{1,1}. Elsewhere, with lam = lam_tau(n),
        A f = E f + sum_{alpha < q} M^q f + sum_{q <= alpha} (M^q_1 + M^q_2) f,
    giving M_{2,1} = |E f|, M_{2,2} = sum_{alpha < q} |M^q f|,
    M_{2,3} = |sum_{q <= alpha} M^q_2 f| and M_{1,2} = |sum_{q <= alpha} M^q_1 f|.
    All pieces live on the periodic cell of side Mf; multiplier samples are
    cached across inputs.
    """

    def __init__(self, sequence, Mf, bump_scale="q_sqrt_lambda", normalization="unit",
                 cell_budget=CELL_BUDGET):
        self.radii = _radii(sequence)
        self.d = sequence.d if isinstance(sequence, LacunarySequence) else None
        self.Mf = Mf
        self.bump_scale = bump_scale
        self.normalization = normalization
        self.cell_budget = cell_budget
        self._mult = {}
        self._tails = {}

    def _spec(self, lam, piece, q=None, alpha=1.0):
        return MultiplierSpec(self.d, lam, piece=piece, q=q, alpha=alpha,
                              bump_scale=self.bump_scale, normalization=self.normalization)

    def _m(self, lam, piece, q=None, alpha=1.0):
        key = (lam, piece, q, alpha)
        if key not in self._mult:
            self._mult[key] = multiplier_grid(self._spec(lam, piece, q, alpha), self.Mf)
            self._tails[key] = kernel_tail(self._mult[key], self.d, self.Mf)
        return self._mult[key]

    def run(self, f, alphas):
        if self.d is None:
            self.d = f.d
        if not np.all((f.values == 0) | (f.values == 1)):
            raise ValueError("the split experiment takes indicator functions")
        Mf = self.Mf
        if Mf % 2 == 0 or Mf < min_resolution(f, max(self.radii)):
            raise ValueError(f"resolution {Mf} is too small (need odd >= {min_resolution(f, max(self.radii))})")
        if Mf**f.d > self.cell_budget:
            raise ResourceError(f"{Mf}^{f.d} cells exceeds the cell budget")
        stack = averages_stack(f, self.radii, Mf)
        tau = StoppingTime(np.argmax(np.abs(stack), axis=0), self.radii)
        a_tau = apply_stopping_time(stack, tau)
        fhat = sfft.rfftn(_to_periodic(f, Mf))
        l1 = float(np.abs(f.values).sum())

        def inv(m):
            return _from_periodic(sfft.irfftn(fhat * m, s=(Mf,) * f.d))

        results = {}
        shape = (Mf,) * f.d
        acc = {a: {k: np.zeros(shape) for k in ("m11", "m12", "m21", "m22", "m23")} for a in alphas}
        recon = {a: np.zeros(shape) for a in alphas}
        used = {a: [] for a in alphas}
        for j, lam in enumerate(self.radii):
            mask = tau.index == j
            if not mask.any():
                continue
            root = sqrt(lam)
            small = [a for a in alphas if root <= a]
            for a in small:
                acc[a]["m11"][mask] = np.abs(a_tau[mask])
                recon[a][mask] = a_tau[mask]
            big = [a for a in alphas if root > a]
            if not big:
                continue
            qmax = isqrt(lam)
            slices = {q: inv(self._m(lam, "q_slice", q)) for q in range(1, qmax + 1)}
            err = inv(self._m(lam, "discrete")) - sum(slices.values())
            for a in big:
                lows = {q: inv(self._m(lam, "low", q, float(a))) for q in range(1, min(int(a), qmax) + 1)}
                low_sum = sum(lows.values()) if lows else np.zeros(shape)
                high_sum = sum(slices[q] - lows[q] for q in lows) if lows else np.zeros(shape)
                big_q = [slices[q] for q in range(int(a) + 1, qmax + 1)]
                p = acc[a]
                p["m21"][mask] = np.abs(err[mask])
                p["m22"][mask] = sum(np.abs(s[mask]) for s in big_q) if big_q else 0.0
                p["m23"][mask] = np.abs(high_sum[mask])
                p["m12"][mask] = np.abs(low_sum[mask])
                recon[a][mask] = (err + sum(big_q, np.zeros(shape)) + high_sum + low_sum)[mask]
                used[a] += [(lam, "discrete", None, 1.0)] + [(lam, "q_slice", q, 1.0) for q in slices]
                used[a] += [(lam, "low", q, float(a)) for q in lows]
        for a in alphas:
            p = acc[a]
            total = p["m11"] + p["m12"] + p["m21"] + p["m22"] + p["m23"]
            viol = float(np.max(np.abs(a_tau) - total))
            quad = l1 * max((self._tails[k] for k in used[a]), default=0.0)
            results[a] = SplitResult(a, p, a_tau, tau, quad, max(viol, 0.0),
                                     float(np.abs(recon[a] - a_tau).max()))
        return results


def m1_m2_split(f, params, Mf=None, **kw):
    """Pieces of the split for one alpha; see SplitEngine."""
    if Mf is None:
        Mf = min_resolution(f, max(_radii(params.sequence)))
    engine = SplitEngine(params.sequence, Mf, **kw)
    return engine.run(f, [params.alpha])[params.alpha]


# --------------------------------------------------------------------------
# Error operator on dyadic blocks

def dyadic_block(seq, Lam):
    """Radii lam_j with Lam <= lam_j < 2 Lam."""
    block = [lam for lam in _radii(seq) if Lam <= lam < 2 * Lam]
    if isinstance(seq, LacunarySequence) and len(block) > 1:
        raise AssertionError("a lacunary sequence has at most one radius per dyadic block")
    return block


def dyadic_error_sup(f, seq, Lam, Mf=None, normalization="unit", cell_budget=CELL_BUDGET):
    """|| sup_{Lam <= lam_j < 2 Lam} |E_{lam_j} f| ||_2 on the periodic grid.

    Returns (value, radii_in_block)."""
    block = dyadic_block(seq, Lam)
    if not block:
        return 0.0, block
    if Mf is None:
        Mf = max(default_resolution(f, lam) for lam in block)
    sup = None
    for lam in block:
        spec = MultiplierSpec(f.d, lam, piece="error", normalization=normalization)
        v = np.abs(apply_multiplier(f, spec, Mf, error_estimate="none", cell_budget=cell_budget).values)
        sup = v if sup is None else np.maximum(sup, v)
    return float(np.sqrt((sup**2).sum())), block


# --------------------------------------------------------------------------
# Norms, level sets, restricted weak type

def lp_norm(f, p):
    v = np.abs(f.values if isinstance(f, GridFunction) else np.asarray(f))
    if p == np.inf:
        return float(v.max()) if v.size else 0.0
    if p < 1:
        raise ValueError("p must be >= 1")
    return float((v**p).sum() ** (1.0 / p))


def distribution_level(g, beta):
    """|{x : g(x) > beta}|."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    v = g.values if isinstance(g, GridFunction) else np.asarray(g)
    return int(np.count_nonzero(v > beta))


def maximal_on_points(points, seq):
    """M_lac 1_F exactly on Z^d for a finite point set F.

    Returns (support, values): the points where M_lac 1_F > 0 and its values.
    """
    F = np.asarray(points, dtype=np.int64)
    d = F.shape[1]
    keys, vals = [], []
    for lam in _radii(seq):
        shell = enumerate_sphere(d, lam)
        hits = (F[:, None, :] + shell.points[None, :, :]).reshape(-1, d)
        u, cnt = np.unique(hits, axis=0, return_counts=True)
        keys.append(u)
        vals.append(cnt / shell.count)
    K = np.vstack(keys)
    V = np.concatenate(vals)
    u, inv = np.unique(K, axis=0, return_inverse=True)
    best = np.zeros(len(u))
    np.maximum.at(best, inv.ravel(), V)
    return u, best


def weak_type_ratio(points, seq, beta):
    """beta |{M_lac 1_F > beta}|^((d-1)/(d+1)) / ||1_F||_{(d+1)/(d-1)}."""
    F = np.asarray(points, dtype=np.int64)
    d = F.shape[1]
    _, vals = maximal_on_points(F, seq)
    e = (d - 1) / (d + 1)
    return beta * np.count_nonzero(vals > beta) ** e / len(F) ** e


def max_weak_type_ratio(points, seq):
    """sup over beta > 0 of weak_type_ratio, attained as beta increases to a
    value v of M_lac 1_F: v |{M_lac 1_F >= v}|^((d-1)/(d+1)) / |F|^((d-1)/(d+1))."""
    F = np.asarray(points, dtype=np.int64)
    d = F.shape[1]
    _, vals = maximal_on_points(F, seq)
    e = (d - 1) / (d + 1)
    v = np.sort(vals)[::-1]
    counts = np.arange(1, len(v) + 1)
    return float(np.max(v * counts**e) / len(F) ** e)


def weak_type_budget(d, beta, F_size):
    """The two terms of the final restricted weak-type estimate with
    alpha = beta^(-1/(d-1)); each equals |F|^((d-1)/(d+1))."""
    if beta <= 0 or F_size <= 0 or d < 4:
        raise ValueError("need beta > 0, |F| > 0, d >= 4")
    alpha = beta ** (-1.0 / (d - 1))
    e = (d - 1) / (d + 1)
    piece1 = beta ** (2.0 / (d + 1)) * (alpha**2 * F_size) ** e
    piece2 = beta ** (-(d - 3) / (d + 1)) * alpha ** (-(d - 3) * (d - 1) / (d + 1)) * F_size**e
    return piece1, piece2


def interp_exponent(d, p):
    """Exponent of N in the l^p bound for the dyadic error sup (epsilon = 0)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return (3 - d) / 2 * (2 - 2 / p) + 2 * (2 / p - 1)


def critical_p(d):
    return (d + 1) / (d - 1)
