"""Vanishing theta nulls and the rank of the Hessian at a theta null."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DerivOrderExceeded
from .theta import Characteristic, RiemannContext, build_context, even_characteristics, theta


@dataclass
class ThetaNullReport:
    characteristic: Characteristic
    theta_value: complex
    hessian: np.ndarray
    singular_values: list
    rank: int
    eigenvalues: list = field(default_factory=list)
    tau: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "characteristic": {"eps": list(self.characteristic.eps), "delta": list(self.characteristic.delta)},
            "theta_value": [self.theta_value.real, self.theta_value.imag],
            "hessian": {"re": self.hessian.real.tolist(), "im": self.hessian.imag.tolist()},
            "singular_values": [float(s) for s in self.singular_values],
            "rank": int(self.rank),
            "eigenvalues": [[complex(e).real, complex(e).imag] for e in self.eigenvalues],
            "tau": None if self.tau is None else {"re": self.tau.real.tolist(), "im": self.tau.imag.tolist()},
        }


@dataclass
class NullSearch:
    """Outcome of a theta-null scan.

    ``characteristic`` is set only when the smallest constant is below the
    tolerance; ``minimizer``/``value`` are reported either way.
    """

    characteristic: Characteristic | None
    minimizer: Characteristic
    value: complex
    tol: float
    below_tol: list

    @property
    def found(self) -> bool:
        return self.characteristic is not None


def even_theta_constants(ctx: RiemannContext) -> dict:
    zero = np.zeros(ctx.g)
    return {m: theta(zero, ctx, m) for m in even_characteristics(ctx.g)}


def find_theta_null(ctx: RiemannContext, tol: float | None = None, constants: dict | None = None) -> NullSearch:
    """Even characteristic with the smallest theta constant, if it is below ``tol``.

    The default tolerance is ``1e-6`` times the largest even theta constant.
    """
    if constants is None:
        constants = even_theta_constants(ctx)
    mags = {m: abs(v) for m, v in constants.items()}
    if tol is None:
        tol = 1e-6 * max(mags.values())
    best = min(mags, key=lambda m: (mags[m], m))
    below = sorted((m for m in mags if mags[m] < tol), key=lambda m: (mags[m], m))
    return NullSearch(best if mags[best] < tol else None, best, constants[best], float(tol), below)


def hessian_at_null(ctx: RiemannContext, m: Characteristic, check_symmetry: bool = False) -> np.ndarray:
    """Matrix of second z-derivatives of theta[m] at ``z = 0``, symmetrized."""
    if ctx.nderivs < 2:
        raise DerivOrderExceeded("the Hessian needs a context built with nderivs >= 2")
    g = ctx.g
    basis = np.eye(g)
    zero = np.zeros(g)
    H = np.empty((g, g), dtype=complex)
    for j in range(g):
        for k in range(g):
            H[j, k] = theta(zero, ctx, m, [basis[j], basis[k]])
    if check_symmetry:
        scale = max(np.abs(H).max(), 1e-300)
        if np.abs(H - H.T).max() > 1e-8 * scale:
            raise ArithmeticError("Hessian is not symmetric to 1e-8")
    return 0.5 * (H + H.T)


def singular_values(M, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Singular values by one-sided (Hestenes) Jacobi rotations, descending."""
    A = np.array(M, dtype=complex)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    n = A.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = np.vdot(A[:, i], A[:, i]).real
                beta = np.vdot(A[:, j], A[:, j]).real
                gam = np.vdot(A[:, i], A[:, j])
                if abs(gam) <= tol * np.sqrt(alpha * beta) or abs(gam) == 0:
                    continue
                rotated = True
                # reduce to a real rotation by factoring out the phase of gam
                phase = gam / abs(gam)
                zeta = (beta - alpha) / (2 * abs(gam))
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1 + zeta * zeta))
                c = 1 / np.sqrt(1 + t * t)
                s = c * t
                ai = A[:, i].copy()
                aj = A[:, j] * np.conj(phase)
                A[:, i] = c * ai - s * aj
                A[:, j] = (s * ai + c * aj) * phase
        if not rotated:
            break
    return np.sort(np.linalg.norm(A, axis=0))[::-1]


def numerical_rank(M, rel_tol: float = 1e-8):
    """``(rank, singular_values)``: count of singular values above ``rel_tol * sigma_max``."""
    sv = singular_values(M)
    if sv.size == 0:
        return 0, []
    threshold = max(rel_tol * sv[0], 1e-300)
    return int(np.sum(sv > threshold)), sv.tolist()


def schottky_null(tau, eps: float = 1e-12, tol: float | None = None, rel_tol: float = 1e-8, siegel: bool = True):
    """Theta-null diagnostic: report with Hessian rank, or ``None`` if no even constant vanishes.

    Characteristics and Hessian refer to the (possibly reduced) matrix
    ``report.tau``.
    """
    ctx = build_context(tau, eps=eps, nderivs=2, siegel=siegel)
    search = find_theta_null(ctx, tol)
    if not search.found:
        return None
    H = hessian_at_null(ctx, search.characteristic)
    rank, sv = numerical_rank(H, rel_tol)
    eig = sorted(np.linalg.eigvals(H), key=abs, reverse=True)
    return ThetaNullReport(search.characteristic, search.value, H, sv, rank, eig, np.array(ctx.tau))
