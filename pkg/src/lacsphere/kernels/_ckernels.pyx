# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, floor, sqrt, M_PI

cnp.import_array()


cdef long _isqrt(long n) nogil:
    cdef long r = <long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef long _walk(int depth, int d, long rem, long* cur, long* out, long count,
                bint fill, long* starts, long* pairs) nogil:
    # Lexicographic emission: each coordinate ascends; the final two come from
    # the two-square table, whose per-norm lists are already in lex order.
    cdef long r, x, j, k
    if depth == d - 2:
        if fill:
            for k in range(starts[rem], starts[rem + 1]):
                cur[depth] = pairs[2 * k]
                cur[depth + 1] = pairs[2 * k + 1]
                for j in range(d):
                    out[count * d + j] = cur[j]
                count += 1
            return count
        return count + starts[rem + 1] - starts[rem]
    r = _isqrt(rem)
    for x in range(-r, r + 1):
        cur[depth] = x
        count = _walk(depth + 1, d, rem - x * x, cur, out, count, fill, starts, pairs)
    return count


def _two_square_table(long lam):
    """CSR table of (x, y) with x^2 + y^2 = n for n <= lam, lex order per n."""
    cdef long r = _isqrt(lam)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] starts = np.zeros(lam + 2, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fillpos
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pairs
    cdef long x, y, n, total
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            n = x * x + y * y
            if n <= lam:
                starts[n + 1] += 1
    starts = np.cumsum(starts)
    total = starts[lam + 1]
    pairs = np.empty(2 * max(total, 1), dtype=np.int64)
    fillpos = starts.copy()
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            n = x * x + y * y
            if n <= lam:
                pairs[2 * fillpos[n]] = x
                pairs[2 * fillpos[n] + 1] = y
                fillpos[n] += 1
    return starts, pairs


def enumerate_shell(int d, long lam):
    cdef long cur[64]
    cdef long n
    cdef long r
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out
    cdef cnp.ndarray[cnp.int64_t, ndim=1] starts
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pairs
    if d < 1 or d > 64:
        raise ValueError("dimension out of range")
    if lam < 0:
        return np.zeros((0, d), dtype=np.int64)
    if d == 1:
        r = _isqrt(lam)
        if r * r != lam:
            return np.zeros((0, 1), dtype=np.int64)
        return np.array([[-r], [r]] if r else [[0]], dtype=np.int64)
    starts, pairs = _two_square_table(lam)
    with nogil:
        n = _walk(0, d, lam, cur, NULL, 0, False, <long*>&starts[0], <long*>&pairs[0])
    out = np.empty((n, d), dtype=np.int64)
    if n:
        with nogil:
            _walk(0, d, lam, cur, <long*>&out[0, 0], 0, True, <long*>&starts[0], <long*>&pairs[0])
    return out


def phase_histogram(long q, l):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] lv = np.asarray(l, dtype=np.int64) % q
    cdef int d = lv.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hist = np.zeros(q * q, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] sq = (np.arange(q, dtype=np.int64) ** 2) % q
    cdef long[64] xs
    cdef long[65] pq
    cdef long[65] pl
    cdef long x, qq, ll
    cdef int i
    if d == 0:
        hist[0] = 1
        return hist
    if d > 64:
        raise ValueError("dimension out of range")
    with nogil:
        for i in range(d):
            xs[i] = 0
        pq[0] = 0
        pl[0] = 0
        for i in range(d - 1):
            pq[i + 1] = 0
            pl[i + 1] = 0
        # Odometer over the first d-1 coordinates; innermost coordinate unrolled.
        while True:
            ll = pl[d - 1]
            for x in range(q):
                qq = pq[d - 1] + sq[x]
                if qq >= q:
                    qq -= q
                hist[qq * q + ll] += 1
                ll += lv[d - 1]
                if ll >= q:
                    ll -= q
            i = d - 2
            while i >= 0:
                xs[i] += 1
                if xs[i] < q:
                    break
                xs[i] = 0
                i -= 1
            if i < 0:
                break
            while i < d - 1:
                pq[i + 1] = (pq[i] + sq[xs[i]]) % q
                pl[i + 1] = (pl[i] + lv[i] * xs[i]) % q
                i += 1
    return hist


def shell_trig_sum(points, xis):
    # e(-m.xi) = prod_j e(-m_j xi_j): per-frequency tables of e(-r xi_j) for
    # |r| <= R turn each point into d - 1 complex products
    cdef cnp.ndarray[cnp.int64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xv = np.ascontiguousarray(
        np.atleast_2d(np.asarray(xis, dtype=np.float64)))
    cdef Py_ssize_t n = xv.shape[0], npts = pts.shape[0], d = pts.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    if npts and xv.shape[1] != d:
        raise ValueError("dimension mismatch")
    cdef long R = int(np.abs(pts).max()) if npts else 0
    cdef Py_ssize_t W = 2 * R + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2] tre = np.empty((d, W))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] tim = np.empty((d, W))
    cdef Py_ssize_t k, m, j, r
    cdef double t, ang, re, im, pr, pi_, a, b
    with nogil:
        for k in range(n):
            for j in range(d):
                for r in range(W):
                    t = (r - R) * xv[k, j]
                    t -= floor(t + 0.5)
                    ang = 2.0 * M_PI * t
                    tre[j, r] = cos(ang)
                    tim[j, r] = -sin(ang)
            re = 0.0
            im = 0.0
            for m in range(npts):
                pr = tre[0, pts[m, 0] + R]
                pi_ = tim[0, pts[m, 0] + R]
                for j in range(1, d):
                    a = tre[j, pts[m, j] + R]
                    b = tim[j, pts[m, j] + R]
                    pr, pi_ = pr * a - pi_ * b, pr * b + pi_ * a
                re += pr
                im += pi_
            out[k] = re + 1j * im
    return out
