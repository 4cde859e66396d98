"""Small-dimensional lattice algorithms.

Bases are stored as numpy arrays whose *rows* are the basis vectors, so a
lattice vector with integer coefficients ``x`` is ``x @ B``.  Unimodular
transforms ``U`` act on the left: ``B' = U @ B``.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBasis, EllipsoidTooLarge, NotPositiveDefinite

DEFAULT_MAX_POINTS = 10**7
_REL_DEGENERATE = 1e-24
_TIE_RTOL = 1e-10


def max_points_from_env() -> int:
    """Ellipsoid point cap, overridable through ``THETA_MAX_ELLIPSOID``."""
    raw = os.environ.get("THETA_MAX_ELLIPSOID")
    if raw is None:
        return DEFAULT_MAX_POINTS
    return int(float(raw))


def cholesky_upper(Y) -> np.ndarray:
    """Upper-triangular ``T`` with positive diagonal such that ``Y = T.T @ T``."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2 or Y.shape[0] != Y.shape[1] or Y.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {Y.shape}")
    scale = float(np.abs(Y).max())
    if np.abs(Y - Y.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    try:
        L = np.linalg.cholesky(0.5 * (Y + Y.T))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("matrix is not positive definite") from exc
    T = L.T.copy()
    if not np.all(np.diag(T) > 0) or not np.all(np.isfinite(T)):
        raise NotPositiveDefinite("non-positive pivot in Cholesky factorization")
    return T


def spectral_norm(M) -> float:
    return float(np.linalg.norm(np.asarray(M, dtype=float), 2))


def _as_basis(B) -> np.ndarray:
    B = np.array(B, dtype=float)
    if B.ndim != 2 or B.shape[0] == 0 or B.shape[0] > B.shape[1]:
        raise ValueError(f"basis must be a (m, n) array with 0 < m <= n, got {B.shape}")
    return B


def gram_schmidt(B):
    """Return ``(mu, bstar)``: GS coefficients and squared GS norms of the rows."""
    m = B.shape[0]
    mu = np.eye(m)
    bstar = np.zeros(m)
    ortho = np.zeros_like(B, dtype=float)
    for i in range(m):
        v = B[i].astype(float).copy()
        for j in range(i):
            mu[i, j] = (B[i] @ ortho[j]) / bstar[j]
            v -= mu[i, j] * ortho[j]
        ortho[i] = v
        bstar[i] = v @ v
        if bstar[i] < 1e-300 or bstar[i] <= _REL_DEGENERATE * (B[i] @ B[i]):
            raise DegenerateBasis(f"basis vector {i} is linearly dependent on its predecessors")
    return mu, bstar


def lll_reduce(B, delta: float = 0.99):
    """LLL-reduce the rows of ``B``; returns ``(U @ B, U)``."""
    if not 0.25 < delta < 1.0:
        raise ValueError("delta must lie in (1/4, 1)")
    B = _as_basis(B)
    m = B.shape[0]
    U = np.eye(m, dtype=np.int64)
    work = B.copy()
    mu, bstar = gram_schmidt(work)
    k = 1
    while k < m:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                work[k] -= q * work[j]
                U[k] -= q * U[j]
                mu[k, : j + 1] -= q * mu[j, : j + 1]
        if bstar[k] >= (delta - mu[k, k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            work[[k - 1, k]] = work[[k, k - 1]]
            U[[k - 1, k]] = U[[k, k - 1]]
            mu, bstar = gram_schmidt(work)
            k = max(k - 1, 1)
    return U @ B, U


def _short_vectors(mu, bstar, bound, shrink):
    """Schnorr-Euchner enumeration of nonzero ``x`` with GS norm^2 <= bound.

    With ``shrink`` the bound tightens to the best norm found so far (plus a
    tie tolerance), which turns the enumeration into an exact SVP search.
    """
    m = len(bstar)
    mu = mu.tolist()
    bstar = bstar.tolist()
    x = [0] * m
    found = []
    state = [bound]

    def rec(i, partial):
        c = -sum(mu[j][i] * x[j] for j in range(i + 1, m))
        rem = (state[0] - partial) / bstar[i]
        if rem < 0:
            return
        r = math.sqrt(rem)
        candidates = sorted(range(math.ceil(c - r), math.floor(c + r) + 1), key=lambda t: abs(t - c))
        for xi in candidates:
            d = partial + bstar[i] * (xi - c) ** 2
            if d > state[0]:
                break
            x[i] = xi
            if i == 0:
                if any(x):
                    found.append(tuple(x))
                    if shrink:
                        state[0] = min(state[0], d * (1 + _TIE_RTOL))
            else:
                rec(i - 1, d)
        x[i] = 0

    rec(m - 1, 0.0)
    return found


def _canonical_sign(v):
    for t in v:
        if t != 0:
            return tuple(v) if t > 0 else tuple(-s for s in v)
    return tuple(v)


def shortest_vector(B):
    """Exact shortest nonzero vector of the lattice spanned by the rows of ``B``.

    Returns ``(coeffs, rho)`` with ``coeffs`` an integer vector in terms of the
    input basis and ``rho = ||coeffs @ B||``.  Among minimizers the
    sign-normalized (first nonzero entry positive), lexicographically smallest
    coefficient vector is returned.
    """
    B = _as_basis(B)
    reduced, U = lll_reduce(B)
    mu, bstar = gram_schmidt(reduced)
    bound = float(reduced[0] @ reduced[0]) * (1 + _TIE_RTOL)
    found = _short_vectors(mu, bstar, bound, shrink=True)
    coeffs = [np.asarray(x, dtype=np.int64) @ U for x in found]
    norms = [float(np.sum((c @ B) ** 2)) for c in coeffs]
    best = min(norms)
    ties = {_canonical_sign(c.tolist()) for c, nrm in zip(coeffs, norms) if nrm <= best * (1 + _TIE_RTOL)}
    choice = np.array(min(ties), dtype=np.int64)
    return choice, float(np.linalg.norm(choice @ B))


def _complete_unimodular(c):
    """Integer unimodular matrix whose first row is the primitive vector ``c``."""
    cur = [int(t) for t in c]
    m = len(cur)
    W = [[int(i == j) for j in range(m)] for i in range(m)]
    Winv = [row[:] for row in W]
    while sum(1 for t in cur if t) > 1:
        i = min((k for k in range(m) if cur[k]), key=lambda k: abs(cur[k]))
        for j in range(m):
            if j != i and cur[j]:
                q = cur[j] // cur[i]
                cur[j] -= q * cur[i]
                for r in range(m):
                    W[r][j] -= q * W[r][i]
                for s in range(m):
                    Winv[i][s] += q * Winv[j][s]
    p = next(k for k in range(m) if cur[k])
    if abs(cur[p]) != 1:
        raise ValueError("coefficient vector is not primitive")
    for row in W:
        row[0], row[p] = row[p], row[0]
    Winv[0], Winv[p] = Winv[p], Winv[0]
    cur[0], cur[p] = cur[p], cur[0]
    if cur[0] < 0:
        Winv[0] = [-t for t in Winv[0]]
    return np.array(Winv, dtype=np.int64)


def _project_out(B, k):
    """Rows ``k:`` of ``B`` projected orthogonally to the span of rows ``:k``."""
    if k == 0:
        return B.copy()
    Q, _ = np.linalg.qr(B[:k].T)
    rest = B[k:]
    return rest - (rest @ Q) @ Q.T


def hkz_reduce(B):
    """Hermite-Korkine-Zolotarev reduction; returns ``(U @ B, U)``.

    Vector ``k`` of the output is a shortest vector of the lattice projected
    orthogonally to vectors ``0..k-1``.  A basis vector that already attains
    the projected minimum is kept, so reduced inputs come back unchanged.
    The result is finally size-reduced, which leaves all projections intact.
    """
    B = _as_basis(B)
    m = B.shape[0]
    gram_schmidt(B)
    U = np.eye(m, dtype=np.int64)
    for k in range(m):
        current = U @ B
        P = _project_out(current, k)
        coeffs, rho = shortest_vector(P)
        if np.linalg.norm(P[0]) <= rho * (1 + _TIE_RTOL):
            continue
        V = _complete_unimodular(coeffs)
        U[k:] = V @ U[k:]
    current = U @ B
    mu, _ = gram_schmidt(current)
    for i in range(1, m):
        for j in range(i - 1, -1, -1):
            q = round(mu[i, j])
            if q:
                U[i] -= q * U[j]
                mu[i, : j + 1] -= q * mu[j, : j + 1]
    return U @ B, U


@dataclass(frozen=True)
class EllipsoidCache:
    """Integer points of a deformed ellipsoid, sorted by their box distance.

    ``distances[i]`` is a certified lower bound on the minimum over the offset
    box of ``||sqrt(pi) T (n_i - c)||``; it is exact up to rounding for the
    radii the cache was classified against.
    """

    points: np.ndarray
    radius: float
    order: int = 0
    distances: np.ndarray = field(default=None, repr=False)

    def __len__(self):
        return len(self.points)

    def as_set(self):
        return {tuple(int(t) for t in p) for p in self.points}

    def restrict(self, radius: float, order: int) -> "EllipsoidCache":
        """Sub-cache for a smaller radius (a prefix, since points are sorted)."""
        if radius > self.radius:
            raise ValueError("cannot enlarge a cache by restriction")
        cut = int(np.searchsorted(self.distances, radius, side="left"))
        return EllipsoidCache(self.points[:cut], radius, order, self.distances[:cut])


def _ball_points(Ts, R, cap):
    """All integer ``n`` with ``||Ts n|| < R`` for upper-triangular ``Ts``."""
    g = Ts.shape[0]
    diag = np.diag(Ts)
    prefixes = np.zeros((1, 0), dtype=np.int64)
    partial = np.zeros(1)
    R2 = R * R
    for i in range(g - 1, -1, -1):
        c = -(prefixes @ Ts[i, i + 1 :]) / diag[i]
        half = np.sqrt(np.maximum(R2 - partial, 0.0)) / diag[i]
        lo = np.ceil(c - half).astype(np.int64)
        hi = np.floor(c + half).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total > cap:
            raise EllipsoidTooLarge(
                f"ellipsoid enumeration exceeds {cap} points; Siegel-reduce the matrix or raise the cap"
            )
        idx = np.repeat(np.arange(len(c)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        ni = lo[idx] + offsets
        newpartial = partial[idx] + (diag[i] * (ni - c[idx])) ** 2
        keep = newpartial < R2
        prefixes = np.column_stack([ni[keep], prefixes[idx][keep]])
        partial = newpartial[keep]
    return prefixes


def box_min_quadratic(G, n, bound, thresholds=None, tol=1e-12, max_sweeps=2000):
    """Bracket ``min d^t G d`` over the box ``n +- bound``, row-wise.

    Coordinate descent on a strictly convex quadratic gives an upper bound;
    the linearization (Frank-Wolfe gap) at the iterate gives a certified lower
    bound.  A row stops once every value in ``thresholds`` is decided
    (upper < t or lower >= t) or no coordinate moves by more than ``tol``.
    Returns ``(lower, upper)``.
    """
    n = np.asarray(n, dtype=float)
    lo = n - bound
    hi = n + bound
    d = np.clip(0.0, lo, hi)
    lower = np.zeros(len(n))
    upper = np.full(len(n), np.inf)
    ts = None if thresholds is None else np.asarray(thresholds, dtype=float)
    g = G.shape[0]
    active = np.arange(len(n))
    moved = np.full(len(n), np.inf)
    for sweep in range(max_sweeps + 1):
        if active.size == 0:
            break
        da = d[active]
        grad = 2.0 * da @ G
        up = np.maximum(np.einsum("ki,ki->k", da, grad) / 2, 0.0)
        gap = np.minimum(grad * (lo[active] - da), grad * (hi[active] - da)).sum(axis=1)
        low = np.clip(up + gap, 0.0, up)
        done = moved[active] <= tol
        low = np.where(done, up, low)
        upper[active] = up
        lower[active] = low
        if ts is not None:
            undecided = (up[:, None] >= ts) & (low[:, None] < ts)
            done |= ~undecided.any(axis=1)
        active = active[~done]
        if active.size == 0 or sweep == max_sweeps:
            break
        da = d[active]
        step = np.zeros(active.size)
        for j in range(g):
            off = da @ G[j] - G[j, j] * da[:, j]
            new = np.clip(-off / G[j, j], lo[active, j], hi[active, j])
            step = np.maximum(step, np.abs(new - da[:, j]))
            da[:, j] = new
        d[active] = da
        moved[active] = step
    return lower, upper


def _box_vertex_norm(Ts, bound):
    """max over the box |c_j| <= bound of ||Ts c|| (attained at a vertex)."""
    g = Ts.shape[0]
    if bound == 0:
        return 0.0
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=g)))
    return float(bound * np.sqrt(np.max(np.sum((signs @ Ts.T) ** 2, axis=1))))


def enumerate_deformed_ellipsoid(T, R: float, offset_bound: float = 1.0, max_points: int | None = None,
                                 sub_radii=()):
    """Integer ``n`` with ``min_{|c_j| <= offset_bound} ||sqrt(pi) T (n - c)|| < R``.

    Candidates come from the ball of radius ``R`` enlarged by the largest
    image of the offset box; each is then classified by box-constrained
    minimization, certified against ``R`` and every radius in ``sub_radii``
    so the cache can later be restricted to those radii exactly.  Points
    whose classification stays undecided are kept: the result is never
    smaller than the exact set.
    """
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("T must be square")
    if np.any(np.tril(T, -1) != 0) or np.any(np.diag(T) <= 0):
        raise ValueError("T must be upper-triangular with positive diagonal")
    if not R > 0:
        raise ValueError("R must be positive")
    if offset_bound < 0:
        raise ValueError("offset_bound must be non-negative")
    cap = max_points_from_env() if max_points is None else max_points
    Ts = math.sqrt(math.pi) * T
    candidates = _ball_points(Ts, R + _box_vertex_norm(Ts, offset_bound), cap)
    thresholds = np.array(sorted({float(R)} | {float(r) for r in sub_radii if r < R})) ** 2
    lower, _ = box_min_quadratic(Ts.T @ Ts, candidates, offset_bound, thresholds)
    dist = np.sqrt(lower)
    keep = dist < R
    points, dist = candidates[keep], dist[keep]
    order = np.argsort(dist, kind="stable")
    return EllipsoidCache(points[order], float(R), 0, dist[order])
