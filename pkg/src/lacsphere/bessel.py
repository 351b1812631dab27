"""Normalized Bessel function Lambda_nu(z) = Gamma(nu + 1) (z/2)^-nu J_nu(z).

nu is an integer or half-integer (nu = (d - 2)/2). Power series below
|z| = 12; above it, trigonometric closed forms for half-integer orders and
the Hankel asymptotic expansion for integer orders.
"""
from math import gamma, lgamma

import numpy as np

CROSSOVER = 12.0
_SERIES_TERMS = 80
_ASYMP_TERMS = 40


def _series(nu, z):
    # sum_k (-z^2/4)^k / (k! (nu+1)_k)
    w = -0.25 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(1, _SERIES_TERMS):
        term = term * w / (k * (nu + k))
        total += term
        if np.all(np.abs(term) < 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _jv_half(nu, z):
    # upward recurrence from J_{1/2}, J_{-1/2}; stable for z > nu
    pref = np.sqrt(2.0 / (np.pi * z))
    j_prev = pref * np.cos(z)  # J_{-1/2}
    j_cur = pref * np.sin(z)   # J_{1/2}
    order = 0.5
    while order < nu - 1e-9:
        j_prev, j_cur = j_cur, (2.0 * order / z) * j_cur - j_prev
        order += 1.0
    return j_cur


def _jv_asymptotic(nu, z):
    mu = 4.0 * nu * nu
    P = np.ones_like(z)
    Q = np.zeros_like(z)
    a = 1.0
    best = np.full_like(z, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, _ASYMP_TERMS):
        a = a * (mu - (2 * k - 1) ** 2) / (k * 8.0)
        t = a / z**k
        # stop each point at its smallest term (optimal truncation)
        active &= np.abs(t) < best
        best = np.where(active, np.abs(t), best)
        if k % 2:
            Q = np.where(active, Q + (-1) ** ((k - 1) // 2) * t, Q)
        else:
            P = np.where(active, P + (-1) ** (k // 2) * t, P)
        if a == 0.0 or not active.any():
            break
    chi = z - (0.5 * nu + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * z)) * (P * np.cos(chi) - Q * np.sin(chi))


def jv(nu, z):
    """J_nu(z) for z >= 0 and integer or half-integer nu >= 0."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = z < CROSSOVER
    if small.any():
        zs = z[small]
        out[small] = _series(nu, zs) * np.exp(nu * np.log(np.maximum(zs, 1e-300) / 2) - lgamma(nu + 1))
    big = ~small
    if big.any():
        zb = z[big]
        half = abs(nu - round(nu)) > 0.25
        out[big] = _jv_half(nu, zb) if half else _jv_asymptotic(nu, zb)
    return out


def normalized_jv(nu, z):
    """Gamma(nu + 1) (z/2)^-nu J_nu(z), with value 1 at z = 0."""
    z = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    small = z < CROSSOVER
    if small.any():
        out[small] = _series(nu, z[small])
    big = ~small
    if big.any():
        zb = z[big]
        out[big] = gamma(nu + 1) * (zb / 2) ** (-nu) * jv(nu, zb)
    return out
