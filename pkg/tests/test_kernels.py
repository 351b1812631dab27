import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lacsphere import kernels

needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")


def naive_histogram(q, l):
    d = len(l)
    hist = np.zeros(q * q, dtype=np.int64)
    for x in np.ndindex(*(q,) * d):
        Q = sum(v * v for v in x) % q
        L = sum(a * b for a, b in zip(l, x)) % q
        hist[Q * q + L] += 1
    return hist


@pytest.mark.parametrize("impl", ["python", "compiled"])
def test_histogram_matches_naive(impl):
    mod = getattr(kernels, impl)
    if mod is None:
        pytest.skip("compiled kernels not built")
    for q, l in [(1, (0, 0)), (3, (1, 2, 0, 1)), (4, (1, 0, 0, 0)), (5, (4, 4, 4))]:
        assert np.array_equal(mod.phase_histogram(q, np.array(l)), naive_histogram(q, l))


@needs_compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 400))
def test_enumeration_backends_agree(d, lam):
    if d >= 5 and lam > 150:
        lam //= 4
    a = kernels.python.enumerate_shell(d, lam)
    b = kernels.compiled.enumerate_shell(d, lam)
    assert np.array_equal(a, b)


@needs_compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), st.integers(4, 5), st.integers(0, 10**6))
def test_histogram_backends_agree(q, d, seed):
    l = np.random.default_rng(seed).integers(0, q, d)
    assert np.array_equal(kernels.python.phase_histogram(q, l), kernels.compiled.phase_histogram(q, l))


@needs_compiled
def test_trig_sum_backends_agree():
    pts = kernels.python.enumerate_shell(4, 50)
    xi = np.random.default_rng(0).uniform(-0.5, 0.5, (64, 4))
    a = kernels.python.shell_trig_sum(pts, xi)
    b = kernels.compiled.shell_trig_sum(pts, xi)
    assert np.abs(a - b).max() < 1e-10 * len(pts)


def test_trig_sum_direct():
    pts = np.array([[1, 0], [0, -2], [3, 1]])
    xi = np.array([[0.1, 0.3], [0.0, 0.0]])
    want = [np.exp(-2j * np.pi * pts @ x).sum() for x in xi]
    assert np.allclose(kernels.shell_trig_sum(pts, xi), want, atol=1e-13)


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
