import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riemann_theta.errors import NotPositiveDefinite, ReductionStalled, SingularTransform
from riemann_theta.lattice import cholesky_upper
from riemann_theta.siegel import (
    apply_symplectic,
    from_blocks,
    is_symplectic,
    random_siegel,
    siegel_reduce,
)


def test_identity_action():
    tau = random_siegel(3, 1)
    assert np.allclose(apply_symplectic(np.eye(6, dtype=int), tau), tau, rtol=0, atol=1e-15)


def test_translation_block():
    tau = random_siegel(3, 2)
    B = np.array([[1, -2, 0], [-2, 3, 1], [0, 1, 0]])
    gamma = from_blocks(np.eye(3), B, np.zeros((3, 3)), np.eye(3))
    assert is_symplectic(gamma)
    assert np.allclose(apply_symplectic(gamma, tau), tau + B, rtol=0, atol=1e-14)


def test_genus1_inversion():
    gamma = np.array([[0, -1], [1, 0]])
    out = apply_symplectic(gamma, np.array([[0.3 + 0.8j]]))
    # -1/tau = (-0.3 + 0.8i) / 0.73
    assert abs(out[0, 0] - (-0.3 + 0.8j) / 0.73) < 1e-15
    assert abs(out[0, 0] - (-0.410959 + 1.095890j)) < 1e-6


def test_singular_transform():
    gamma = np.array([[0, -1], [1, 0]])
    with pytest.raises(SingularTransform):
        apply_symplectic(gamma, np.array([[0.0 + 0.0j]]))


def test_symplectic_check_rejects():
    assert not is_symplectic(np.array([[1, 1], [1, 1]]))
    assert not is_symplectic(np.array([[2, 0], [0, 1]]))
    assert not is_symplectic(np.eye(3, dtype=int))
    assert is_symplectic(np.array([[0, -1], [1, 0]]))


def test_reduce_identity_unchanged():
    for g in (1, 2, 4):
        tau = 1j * np.eye(g)
        red, gamma = siegel_reduce(tau)
        assert np.array_equal(gamma, np.eye(2 * g, dtype=int))
        assert np.array_equal(red, tau)


def test_reduce_genus1():
    red, gamma = siegel_reduce(np.array([[0.3 + 0.8j]]))
    assert abs(red[0, 0] - (-0.410959 + 1.095890j)) < 1e-6
    assert np.array_equal(gamma, np.array([[0, -1], [1, 0]]))


def test_reduce_rejects_non_siegel():
    with pytest.raises(NotPositiveDefinite):
        siegel_reduce(np.array([[0.3 - 0.8j]]))


def test_stall_warning():
    tau = np.array([[0.3 + 0.1j]])
    with pytest.warns(ReductionStalled):
        red, gamma = siegel_reduce(tau, max_iterations=1)
    assert is_symplectic(gamma)
    assert np.allclose(apply_symplectic(gamma, tau), red)


@settings(max_examples=60, deadline=None)
@given(g=st.integers(1, 5), seed=st.integers(0, 2**31))
def test_reduction_properties(g, seed):
    tau = random_siegel(g, seed)
    red, gamma = siegel_reduce(tau)
    assert is_symplectic(gamma)
    assert np.abs(red.real).max() <= 0.5 + 1e-9
    assert abs(red[0, 0]) >= 1 - 1e-12
    cholesky_upper(red.imag)
    assert np.abs(apply_symplectic(gamma, tau) - red).max() <= 1e-9 * max(1.0, np.abs(red).max())


@settings(max_examples=30, deadline=None)
@given(g=st.integers(1, 5), seed=st.integers(0, 2**31))
def test_rereduction_is_trivial(g, seed):
    red, _ = siegel_reduce(random_siegel(g, seed))
    again, gamma = siegel_reduce(red)
    A, B, C, D = gamma[:g, :g], gamma[:g, g:], gamma[g:, :g], gamma[g:, g:]
    assert not B.any() and not C.any()
    # only sign changes / identical-norm swaps of the HKZ basis are allowed
    assert np.allclose(again, A @ red @ A.T, atol=1e-9)
    assert np.allclose(np.diag(again.imag), np.diag(red.imag), rtol=1e-9)


def test_random_siegel_contract():
    a = random_siegel(4, 123)
    b = random_siegel(4, 123)
    assert np.array_equal(a, b)
    assert np.array_equal(a, a.T)
    assert not np.array_equal(a, random_siegel(4, 124))


def test_random_siegel_positive_definite():
    for seed in range(1000):
        cholesky_upper(random_siegel(5, seed).imag)


def test_random_siegel_entries_range():
    tau = random_siegel(6, 7)
    assert np.abs(tau.real).max() <= 1.0
    assert np.abs(tau.imag).max() <= 6.0
