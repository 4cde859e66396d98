"""Theta functions with characteristics and their z-derivatives.

A :class:`RiemannContext` holds everything that depends only on the Riemann
matrix (Cholesky factor, shortest-vector length, summation radii and point
sets per derivative order), so that repeated evaluations only pay for the
final sum over the cached points.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
import numpy as np

from .bounds import ErrorBoundParams, solve_radius
from .errors import DerivOrderExceeded
from .lattice import EllipsoidCache, cholesky_upper, enumerate_deformed_ellipsoid, shortest_vector, spectral_norm
from .siegel import check_riemann_matrix, siegel_reduce

TWO_PI = 2 * math.pi


@dataclass(frozen=True, order=True)
class Characteristic:
    """Half-integer characteristic ``[eps; delta]`` with entries in {0, 1}."""

    eps: tuple
    delta: tuple

    def __post_init__(self):
        eps = tuple(int(t) for t in self.eps)
        delta = tuple(int(t) for t in self.delta)
        if len(eps) != len(delta) or not eps:
            raise ValueError("eps and delta must be non-empty and of equal length")
        if any(t not in (0, 1) for t in eps + delta):
            raise ValueError("characteristic entries must be 0 or 1")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", delta)

    @classmethod
    def zero(cls, g: int) -> "Characteristic":
        return cls((0,) * g, (0,) * g)

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        """Parse ``"1,0,1;0,1,1"`` (or ``"101;011"``) into a characteristic."""
        try:
            top, bottom = text.split(";")
        except ValueError:
            raise ValueError(f"characteristic must look like 'eps;delta', got {text!r}") from None

        def row(s):
            s = s.strip()
            parts = s.split(",") if "," in s else list(s)
            return tuple(int(p) for p in parts)

        return cls(row(top), row(bottom))

    @property
    def g(self) -> int:
        return len(self.eps)

    @property
    def parity(self) -> int:
        return -1 if sum(a * b for a, b in zip(self.eps, self.delta)) % 2 else 1

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    def __str__(self):
        return "".join(map(str, self.eps)) + ";" + "".join(map(str, self.delta))


def parity(m: Characteristic) -> int:
    return m.parity


def all_characteristics(g: int):
    for bits in itertools.product((0, 1), repeat=2 * g):
        yield Characteristic(bits[:g], bits[g:])


def even_characteristics(g: int):
    return [m for m in all_characteristics(g) if m.is_even]


def odd_characteristics(g: int):
    return [m for m in all_characteristics(g) if not m.is_even]


@dataclass(frozen=True)
class DerivativeSpec:
    """Derivative directions normalized to unit length.

    ``scale`` is the product of the original norms, so the derivative along the
    given vectors is ``scale`` times the derivative along ``directions``.
    """

    directions: np.ndarray
    scale: float = 1.0

    @classmethod
    def from_vectors(cls, vectors) -> "DerivativeSpec":
        if isinstance(vectors, DerivativeSpec):
            return vectors
        vecs = [np.asarray(v, dtype=complex).ravel() for v in (vectors or [])]
        if not vecs:
            return cls(np.zeros((0, 0), dtype=complex), 1.0)
        if len({v.size for v in vecs}) != 1:
            raise ValueError("derivative directions must all have the same length")
        norms = [float(np.linalg.norm(v)) for v in vecs]
        if any(n == 0 for n in norms):
            raise ValueError("derivative directions must be nonzero")
        dirs = np.array([v / n for v, n in zip(vecs, norms)])
        dirs.setflags(write=False)
        return cls(dirs, float(np.prod(norms)))

    @property
    def order(self) -> int:
        return self.directions.shape[0]


@dataclass(frozen=True)
class RiemannContext:
    tau_original: np.ndarray
    tau: np.ndarray
    gamma: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    T: np.ndarray
    Yinv: np.ndarray
    rho: float
    Tinv_norm: float
    eps: float
    nderivs: int
    radii: dict
    caches: dict = field(repr=False)
    points_f: dict = field(repr=False)
    quadratic: dict = field(repr=False)

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    @property
    def tau_reduced(self) -> np.ndarray:
        return self.tau


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def build_context(tau, eps: float = 1e-12, nderivs: int = 0, siegel: bool = True, max_points: int | None = None):
    """Precompute the evaluation state for one Riemann matrix.

    With ``siegel`` the matrix is Siegel-reduced first and all evaluations
    refer to the reduced matrix ``ctx.tau``; ``ctx.gamma`` records the
    transform.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if nderivs < 0:
        raise ValueError("nderivs must be non-negative")
    tau = check_riemann_matrix(tau)
    g = tau.shape[0]
    if siegel:
        reduced, gamma = siegel_reduce(tau)
    else:
        reduced, gamma = 0.5 * (tau + tau.T), np.eye(2 * g, dtype=np.int64)
    X = reduced.real
    Y = reduced.imag
    T = cholesky_upper(Y)
    Tinv = np.linalg.inv(T)
    _, rho = shortest_vector(math.sqrt(math.pi) * T.T)
    Tinv_norm = spectral_norm(Tinv)
    radii = {}
    previous = 0.0
    for N in range(nderivs + 1):
        R = solve_radius(ErrorBoundParams(g, N, rho, Tinv_norm, eps))
        previous = max(previous, R)
        radii[N] = previous
    full = enumerate_deformed_ellipsoid(T, radii[nderivs], 1.0, max_points, sub_radii=list(radii.values()))
    caches = {N: full.restrict(radii[N], N) for N in range(nderivs)}
    caches[nderivs] = EllipsoidCache(full.points, full.radius, nderivs, full.distances)
    return RiemannContext(
        tau_original=_frozen(tau),
        tau=_frozen(reduced),
        gamma=_frozen(gamma),
        X=_frozen(X),
        Y=_frozen(Y),
        T=_frozen(T),
        Yinv=_frozen(Tinv @ Tinv.T),
        rho=float(rho),
        Tinv_norm=Tinv_norm,
        eps=float(eps),
        nderivs=int(nderivs),
        radii=radii,
        caches=caches,
        points_f={N: _frozen(c.points.astype(float)) for N, c in caches.items()},
        quadratic={N: _quadratic(c.points, reduced) for N, c in caches.items()},
    )


def _quadratic(points, tau):
    n = points.astype(float)
    return _frozen(1j * math.pi * np.einsum("ki,ij,kj->k", n, tau, n))


def _as_char(m, g):
    if m is None:
        return Characteristic.zero(g)
    if isinstance(m, Characteristic):
        char = m
    elif isinstance(m, str):
        char = Characteristic.parse(m)
    else:
        eps, delta = m
        char = Characteristic(eps, delta)
    if char.g != g:
        raise ValueError(f"characteristic has genus {char.g}, matrix has genus {g}")
    return char


def _as_vector(z, g):
    z = np.asarray(z, dtype=complex).ravel()
    if z.size != g:
        raise ValueError(f"z must have {g} entries, got {z.size}")
    if not np.all(np.isfinite(z)):
        raise ValueError("z must be finite")
    return z


@dataclass(frozen=True)
class ReducedArgument:
    """``z = z0 + p + tau q`` with ``theta[m](z) = exp(2 pi i w) theta[m](z0)``."""

    z0: np.ndarray
    p: np.ndarray
    q: np.ndarray
    w: complex


def reduce_argument(z, ctx: RiemannContext, m=None) -> ReducedArgument:
    """Write ``z = a + tau b + p + tau q`` with ``a, b`` in the unit cell."""
    g = ctx.g
    z = _as_vector(z, g)
    m = _as_char(m, g)
    b = ctx.Yinv @ z.imag
    q = np.floor(b)
    a = z.real - ctx.X @ b
    p = np.floor(a)
    z0 = (a - p) + ctx.tau @ (b - q)
    eps = np.array(m.eps)
    delta = np.array(m.delta)
    w = (eps @ p - delta @ q) / 2 - 0.5 * (q @ ctx.tau @ q) - q @ z0
    return ReducedArgument(z0, p.astype(np.int64), q.astype(np.int64), complex(w))


def theta_split(z, ctx: RiemannContext, char=None, derivs=None):
    """Return ``(s, e)`` with the derivative of theta[char] at z equal to ``s * exp(e)``.

    Keeping the exponent separate avoids overflow of the exponential growth
    factor for large ``Im z``.
    """
    g = ctx.g
    m = _as_char(char, g)
    spec = DerivativeSpec.from_vectors(derivs)
    N = spec.order
    if N > ctx.nderivs:
        raise DerivOrderExceeded(f"derivative order {N} exceeds nderivs={ctx.nderivs}; rebuild the context")
    if N and spec.directions.shape[1] != g:
        raise ValueError(f"derivative directions must have {g} entries")
    red = reduce_argument(z, ctx, m)
    x0 = red.z0.real
    y0 = red.z0.imag
    b0 = ctx.Yinv @ y0
    nearest = np.rint(b0)
    frac = b0 - nearest
    eps = np.array(m.eps, dtype=float)
    delta = np.array(m.delta, dtype=float)
    eta = nearest - eps / 2

    # exponent of term n:  pi i n^t tau n + n . L + C  (quadratic part cached per order)
    pts, quad = ctx.points_f[N], ctx.quadratic[N]
    u = x0 + delta / 2
    shift = frac + eps / 2
    L = TWO_PI * 1j * (u - ctx.X @ eta) - TWO_PI * (ctx.Y @ shift)
    C = TWO_PI * 1j * (0.5 * eta @ ctx.X @ eta - eta @ u) - math.pi * (shift @ ctx.Y @ shift)
    terms = np.exp(quad + pts @ L)
    if N:
        # derivative factors refer to the unshifted argument z = z0 + p + tau q
        offset = eta + red.q
        for k in spec.directions:
            terms = terms * (pts @ k - offset @ k)
    s = np.sum(terms) * np.exp(C) * (2j * math.pi) ** N * spec.scale
    exponent = math.pi * (y0 @ b0) + 2j * math.pi * red.w
    return complex(s), complex(exponent)


def theta(z, ctx: RiemannContext, char=None, derivs=None) -> complex:
    """Derivative of ``theta[char](z, ctx.tau)`` along ``derivs`` (default: value).

    The absolute error is at most ``ctx.eps * exp(pi y^t Y^{-1} y)`` times the
    product of the direction norms, for ``z`` in the fundamental cell.  Returns
    a complex infinity when the growth factor overflows; use
    :func:`theta_split` in that regime.
    """
    s, e = theta_split(z, ctx, char, derivs)
    if s == 0:
        return 0j
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(np.complex128(s) * np.exp(np.complex128(e)))
    if not np.isfinite(value):
        return complex(math.inf, math.inf)
    return value


def theta_naive(z, tau, char=None, derivs=None, box_radius: int = 20) -> complex:
    """Direct summation of the defining series over ``[-r, r]^g`` (test oracle)."""
    tau = np.asarray(tau, dtype=complex)
    g = tau.shape[0]
    z = _as_vector(z, g)
    m = _as_char(char, g)
    r = int(box_radius)
    axis = np.arange(-r, r + 1, dtype=float)
    grid = np.array(np.meshgrid(*([axis] * g), indexing="ij")).reshape(g, -1).T
    n = grid + np.array(m.eps) / 2
    arg = 0.5 * np.einsum("ki,ij,kj->k", n, tau, n) + n @ (z + np.array(m.delta) / 2)
    terms = np.exp(2j * math.pi * arg)
    for k in derivs or []:
        terms = terms * (2j * math.pi * (n @ np.asarray(k, dtype=complex)))
    return complex(np.sum(terms))
