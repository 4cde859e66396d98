"""Symplectic action on the Siegel upper half space and Siegel reduction."""
from __future__ import annotations

import warnings

import numpy as np

from .errors import NotPositiveDefinite, ReductionStalled, SingularTransform
from .lattice import cholesky_upper, hkz_reduce

MAX_ITERATIONS = 300


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


def is_symplectic(gamma) -> bool:
    """Exact check of ``gamma^t J gamma == J`` with Python integers."""
    M = np.asarray(gamma)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        return False
    if not np.all(np.equal(np.mod(M, 1), 0)):
        return False
    M = M.astype(object)
    J = symplectic_form(M.shape[0] // 2).astype(object)
    return bool(np.all(M.T.dot(J).dot(M) == J))


def blocks(gamma):
    """Split a ``2g x 2g`` matrix into ``(A, B, C, D)``."""
    gamma = np.asarray(gamma)
    g = gamma.shape[0] // 2
    return gamma[:g, :g], gamma[:g, g:], gamma[g:, :g], gamma[g:, g:]


def from_blocks(A, B, C, D) -> np.ndarray:
    return np.block([[A, B], [C, D]]).astype(np.int64)


def apply_symplectic(gamma, tau) -> np.ndarray:
    """``(A tau + B)(C tau + D)^{-1}``, symmetrized."""
    tau = np.asarray(tau, dtype=complex)
    A, B, C, D = blocks(gamma)
    den = C @ tau + D
    if np.linalg.cond(den) >= 1e12:
        raise SingularTransform("C tau + D is numerically singular")
    out = np.linalg.solve(den.T, (A @ tau + B).T).T
    return 0.5 * (out + out.T)


def check_riemann_matrix(tau, rtol: float = 1e-10) -> np.ndarray:
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] == 0:
        raise ValueError(f"Riemann matrix must be square, got shape {tau.shape}")
    if np.abs(tau - tau.T).max() > rtol * max(np.abs(tau).max(), 1.0):
        raise ValueError("Riemann matrix is not symmetric")
    cholesky_upper(0.5 * (tau.imag + tau.imag.T))
    return tau


def _inversion(g: int) -> np.ndarray:
    """Genus-1 inversion tau11 -> -1/tau11 embedded in the first coordinate."""
    A = np.eye(g, dtype=np.int64)
    A[0, 0] = 0
    B = np.zeros((g, g), dtype=np.int64)
    B[0, 0] = -1
    C = np.zeros((g, g), dtype=np.int64)
    C[0, 0] = 1
    return from_blocks(A, B, C, A.copy())


def siegel_reduce(tau, max_iterations: int = MAX_ITERATIONS):
    """Move ``tau`` towards the Siegel fundamental domain.

    Each pass HKZ-reduces ``Im tau`` (``tau -> U tau U^t``), subtracts the
    rounded real part, and stops unless ``|tau_11| < 1``, in which case the
    first coordinate is inverted and the loop continues.  Returns
    ``(tau_reduced, gamma)`` with ``tau_reduced = gamma . tau``.  If the
    iteration cap is hit a :class:`ReductionStalled` warning is emitted and the
    last iterate is returned.
    """
    tau = check_riemann_matrix(tau)
    g = tau.shape[0]
    gamma = np.eye(2 * g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    ident = np.eye(g, dtype=np.int64)
    inversion = _inversion(g)
    current = tau.copy()
    for _ in range(max_iterations):
        T = cholesky_upper(0.5 * (current.imag + current.imag.T))
        _, U = hkz_reduce(T.T)
        if not np.array_equal(U, ident):
            Uinv_t = np.rint(np.linalg.inv(U)).astype(np.int64).T
            step = from_blocks(U, zero, zero, Uinv_t)
            current = U @ current @ U.T
            gamma = step @ gamma
        shift = np.rint(current.real).astype(np.int64)
        if np.any(shift):
            current = current - shift
            gamma = from_blocks(ident, -shift, zero, ident) @ gamma
        if abs(current[0, 0]) >= 1:
            return 0.5 * (current + current.T), gamma
        current = apply_symplectic(inversion, current)
        gamma = inversion @ gamma
    warnings.warn(f"Siegel reduction did not terminate in {max_iterations} passes", ReductionStalled)
    return 0.5 * (current + current.T), gamma


def random_siegel(g: int, seed: int | None = None) -> np.ndarray:
    """``(M_X + M_X^t)/2 + i M_Y^t M_Y`` with entries uniform in [-1, 1]."""
    if g < 1:
        raise ValueError("g must be positive")
    rng = np.random.default_rng(seed)
    while True:
        MX = rng.uniform(-1.0, 1.0, size=(g, g))
        MY = rng.uniform(-1.0, 1.0, size=(g, g))
        Y = MY.T @ MY
        Y = 0.5 * (Y + Y.T)
        try:
            cholesky_upper(Y)
        except NotPositiveDefinite:
            continue
        return 0.5 * (MX + MX.T) + 1j * Y
