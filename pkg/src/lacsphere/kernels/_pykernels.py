"""Pure numpy implementations of the hot kernels.

These are the reference fallback for the compiled module ``_ckernels``; both
must return identical results (the shell enumeration bit-for-bit).
"""
from math import isqrt

import numpy as np


def _ball_by_norm(k, lam):
    """All integer k-vectors with |v|^2 <= lam, sorted by norm.

    Returns (points, starts) where points[starts[n]:starts[n+1]] have norm n.
    """
    r = isqrt(lam)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    pts = np.zeros((1, 0), dtype=np.int64)
    norms = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        n2 = norms[:, None] + axis[None, :] ** 2
        keep = n2 <= lam
        rows, cols = np.nonzero(keep)
        pts = np.concatenate([pts[rows], axis[cols, None]], axis=1)
        norms = n2[rows, cols]
    order = np.argsort(norms, kind="stable")
    pts, norms = pts[order], norms[order]
    starts = np.searchsorted(norms, np.arange(lam + 2))
    return pts, starts


def enumerate_shell(d, lam):
    """Integer points m in Z^d with |m|^2 = lam, in lexicographic order."""
    d1 = d // 2
    d2 = d - d1
    if d1 == 0:
        r = isqrt(lam)
        if r * r != lam:
            return np.zeros((0, d), dtype=np.int64)
        return np.array(sorted({(-r,), (r,)}), dtype=np.int64).reshape(-1, 1)
    a_pts, a_st = _ball_by_norm(d1, lam)
    b_pts, b_st = (a_pts, a_st) if d2 == d1 else _ball_by_norm(d2, lam)
    blocks = []
    for n in range(lam + 1):
        a = a_pts[a_st[n]:a_st[n + 1]]
        b = b_pts[b_st[lam - n]:b_st[lam - n + 1]]
        if len(a) and len(b):
            blocks.append(np.concatenate(
                [np.repeat(a, len(b), axis=0), np.tile(b, (len(a), 1))], axis=1))
    if not blocks:
        return np.zeros((0, d), dtype=np.int64)
    out = np.concatenate(blocks)
    order = np.lexsort(out.T[::-1])
    return np.ascontiguousarray(out[order])


def phase_histogram(q, l):
    """Counts H[Q * q + L] of x in Z_q^d with |x|^2 = Q and l.x = L (mod q)."""
    l = np.asarray(l, dtype=np.int64) % q
    d = len(l)
    x = np.arange(q, dtype=np.int64)
    sq = (x * x) % q
    hist = np.zeros(q * q, dtype=np.int64)
    if d == 0:
        hist[0] = 1
        return hist
    # Build the (d-1)-dimensional tail once, then sweep the first coordinate.
    quad = np.zeros(1, dtype=np.int64)
    lin = np.zeros(1, dtype=np.int64)
    for i in range(1, d):
        quad = (quad[:, None] + sq[None, :]).ravel() % q
        lin = (lin[:, None] + (l[i] * x % q)[None, :]).ravel() % q
    for x1 in range(q):
        qq = (quad + sq[x1]) % q
        ll = (lin + l[0] * x1) % q
        hist += np.bincount(qq * q + ll, minlength=q * q)
    return hist


def shell_trig_sum(points, xis, chunk=256):
    """S(xi) = sum_m exp(-2 pi i m.xi) for each row xi of ``xis``."""
    points = np.asarray(points, dtype=np.float64)
    xis = np.atleast_2d(np.asarray(xis, dtype=np.float64))
    out = np.empty(len(xis), dtype=np.complex128)
    for s in range(0, len(xis), chunk):
        t = points @ xis[s:s + chunk].T
        t -= np.rint(t)
        ang = 2.0 * np.pi * t
        out[s:s + chunk] = np.cos(ang).sum(axis=0) - 1j * np.sin(ang).sum(axis=0)
    return out
