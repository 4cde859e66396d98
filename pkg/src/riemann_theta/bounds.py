"""Truncation-error bound for the theta sum and the summation radius."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidRadius, NoConvergence, UnsupportedArgument

RADIUS_CAP = 1e4


def incomplete_gamma_upper(s: float, x: float) -> float:
    """Upper incomplete gamma Gamma(s, x) for half-integer ``s > 0``.

    Uses Gamma(1, x) = exp(-x), Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)) and the
    upward recurrence Gamma(s+1, x) = s Gamma(s, x) + x^s exp(-x); all terms
    are non-negative so there is no cancellation.
    """
    twice = 2 * s
    if twice <= 0 or abs(twice - round(twice)) > 1e-12:
        raise UnsupportedArgument(f"s must be a positive half-integer, got {s}")
    if x < 0:
        raise UnsupportedArgument(f"x must be non-negative, got {x}")
    twice = int(round(twice))
    if twice % 2 == 0:
        a, value = 1.0, math.exp(-x)
    else:
        a, value = 0.5, math.sqrt(math.pi) * math.erfc(math.sqrt(x))
    ex = math.exp(-x)
    while a < twice / 2:
        value = a * value + x**a * ex
        a += 1.0
    return value


@dataclass(frozen=True)
class ErrorBoundParams:
    g: int
    N: int
    rho: float
    Tinv_norm: float
    eps: float

    def __post_init__(self):
        if self.g < 1 or self.N < 0 or not self.rho > 0 or self.Tinv_norm < 0 or not self.eps > 0:
            raise ValueError(f"invalid error-bound parameters: {self}")


def error_bound(R: float, p: ErrorBoundParams) -> float:
    """Bound on the tail of the derivative-order-``N`` theta sum outside radius ``R``."""
    if not R > p.rho / 2:
        raise InvalidRadius(f"R={R} must exceed rho/2={p.rho / 2}")
    x = (R - p.rho / 2) ** 2
    total = 0.0
    for j in range(p.N + 1):
        total += (
            math.comb(p.N, j)
            * math.pi ** (-j / 2)
            * p.Tinv_norm**j
            * math.sqrt(p.g) ** (p.N - j)
            * incomplete_gamma_upper((p.g + j) / 2, x)
        )
    if total == 0.0:
        return 0.0
    log_value = p.N * math.log(2 * math.pi) + math.log(p.g / 2) + p.g * math.log(2 / p.rho) + math.log(total)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def minimal_radius(p: ErrorBoundParams) -> float:
    """Lower limit on R below which the tail estimate does not apply."""
    g, N = p.g, p.N
    return 0.5 * math.sqrt(g + 2 * N + math.sqrt(g * g + 8 * N)) + p.rho / 2


def solve_radius(p: ErrorBoundParams, tol: float = 1e-10, max_radius: float = RADIUS_CAP) -> float:
    """Smallest admissible radius with ``error_bound(R) <= p.eps``.

    Bracket by doubling from the minimal radius, then bisect; the upper end
    of the final bracket is returned so the bound always holds.
    """
    def met(R):
        return error_bound(R, p) <= p.eps

    lo = minimal_radius(p)
    if met(lo):
        return lo
    hi = 2 * lo
    while not met(hi):
        lo, hi = hi, 2 * hi
        if hi > max_radius:
            raise NoConvergence(f"no radius below {max_radius} meets eps={p.eps}")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if met(mid):
            hi = mid
        else:
            lo = mid
    return hi
