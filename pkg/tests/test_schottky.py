import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reference_hessian import EIGENVALUES, HESSIAN
from riemann_theta.errors import DerivOrderExceeded
from riemann_theta.schottky import (
    even_theta_constants,
    find_theta_null,
    hessian_at_null,
    numerical_rank,
    schottky_null,
    singular_values,
)
from riemann_theta.siegel import random_siegel
from riemann_theta.theta import Characteristic, build_context, theta, theta_naive

NULL_2 = Characteristic((1, 1), (1, 1))


@pytest.fixture(scope="module")
def diag_ctx():
    return build_context(1j * np.eye(2), nderivs=2)


def test_counts():
    for g, count in zip(range(1, 5), (3, 10, 36, 136)):
        ctx = build_context(random_siegel(g, g))
        assert len(even_theta_constants(ctx)) == count


def test_genus1_constants_nonzero():
    ctx = build_context(np.array([[1j]]))
    consts = even_theta_constants(ctx)
    assert len(consts) == 3
    for m, v in consts.items():
        assert abs(v - theta_naive([0], [[1j]], m, box_radius=30)) < 1e-12
        assert abs(v) > 0.5


def test_forced_null(diag_ctx):
    consts = even_theta_constants(diag_ctx)
    assert abs(consts[NULL_2]) < 1e-14
    search = find_theta_null(diag_ctx)
    assert search.found and search.characteristic == NULL_2
    assert search.below_tol == [NULL_2]


def test_generic_has_no_null():
    ctx = build_context(random_siegel(3, 1234))
    search = find_theta_null(ctx)
    assert not search.found
    assert search.minimizer.is_even
    assert abs(search.value) > search.tol


def test_zero_tolerance(diag_ctx):
    assert not find_theta_null(diag_ctx, tol=0.0).found


def test_hessian_forced_null(diag_ctx):
    H = hessian_at_null(diag_ctx, NULL_2, check_symmetry=True)
    dtheta = theta_naive([0], [[1j]], ((1,), (1,)), [[1.0]], box_radius=30)
    assert abs(H[0, 0]) < 1e-10 and abs(H[1, 1]) < 1e-10
    assert abs(H[0, 1] - dtheta**2) < 1e-10 * abs(dtheta**2)
    assert abs(dtheta) > 1
    assert numerical_rank(H)[0] == 2


def test_hessian_needs_second_order():
    ctx = build_context(1j * np.eye(2), nderivs=1)
    with pytest.raises(DerivOrderExceeded):
        hessian_at_null(ctx, NULL_2)


def test_hessian_matches_finite_differences():
    # forced null: block diagonal with an odd genus-1 block times an odd genus-2 block
    t1, t2 = random_siegel(1, 3), random_siegel(2, 4)
    tau = np.zeros((3, 3), dtype=complex)
    tau[:1, :1], tau[1:, 1:] = t1, t2
    m = Characteristic((1, 1, 0), (1, 1, 1))
    assert m.is_even
    ctx = build_context(tau, nderivs=2, siegel=False)
    assert abs(theta(np.zeros(3), ctx, m)) < 1e-12
    H = hessian_at_null(ctx, m, check_symmetry=True)
    h = 1e-4
    I = np.eye(3)
    for j in range(3):
        for k in range(3):
            f = lambda a, b: theta(a * I[j] + b * I[k], ctx, m)
            fd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h)
            assert abs(H[j, k] - fd) <= 1e-4 * max(np.abs(H).max(), 1.0)


class TestNumericalRank:
    def test_zero(self):
        assert numerical_rank(np.zeros((5, 5)))[0] == 0

    def test_identity(self):
        rank, sv = numerical_rank(np.eye(5))
        assert rank == 5 and np.allclose(sv, 1.0)

    def test_against_lapack(self, rng):
        for n in (1, 3, 6, 10):
            M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            assert np.allclose(singular_values(M), np.linalg.svd(M, compute_uv=False), rtol=1e-12)

    def test_low_rank(self, rng):
        A = rng.normal(size=(6, 2)) + 1j * rng.normal(size=(6, 2))
        M = A @ A.T
        assert numerical_rank(M)[0] == 2

    def test_printed_hessian_in_plateau(self):
        # entries carry 6 significant digits, so the null singular values sit near 1e-6 relative
        rank, sv = numerical_rank(HESSIAN, rel_tol=1e-4)
        assert rank == 3
        assert sv == sorted(sv, reverse=True)

    def test_printed_eigenvalues(self):
        eig = sorted(np.linalg.eigvals(HESSIAN), key=abs, reverse=True)
        for got, want in zip(eig[:3], EIGENVALUES):
            assert abs(got - want) <= 1e-3 * abs(want)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_rank_invariant_under_phases(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    M = A @ A.T
    P = np.diag(np.exp(2j * math.pi * rng.random(5)))
    Q = np.diag(np.exp(2j * math.pi * rng.random(5)))
    r1, s1 = numerical_rank(M)
    r2, s2 = numerical_rank(P @ M @ Q)
    assert r1 == r2 == 3
    assert np.allclose(s1, s2, rtol=0, atol=1e-10 * s1[0])


def test_schottky_null_forced():
    report = schottky_null(1j * np.eye(2))
    assert report.characteristic == NULL_2
    assert report.rank == 2
    assert report.characteristic.is_even
    d = report.to_dict()
    assert d["characteristic"] == {"eps": [1, 1], "delta": [1, 1]}
    assert d["rank"] == 2


def test_schottky_null_generic():
    assert schottky_null(random_siegel(3, 77)) is None
