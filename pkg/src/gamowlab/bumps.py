"""Compactly supported bump states and least-squares fitting by width.

The family is K_eps * exp(1/((u/eps)^2 - 1)) inside |u| < eps and exactly 0
outside; K_eps normalizes the L2 norm to 1 and scales as K_1/sqrt(eps).
Fitting a target by a bump is a one-dimensional search over eps; the primary
objective is the L2 distance between unit-norm states.  Because that choice
is not forced, alternative objectives (sup norm, free amplitude, peak match)
can be reported alongside for comparison.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, ConfigurationError, DataError
from .grid import Grid, WaveFunction, norm, simpson_weights
from .numerics import golden_section

DEFAULT_SEARCH = (0.5, 4.0)
_NORM_QUAD_TOL = 1e-12


@dataclass(frozen=True)
class BumpParams:
    epsilon: float
    k_epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ConfigurationError("epsilon must be positive")
        if self.k_epsilon <= 0:
            raise ConfigurationError("k_epsilon must be positive")


def eval_bump(params: BumpParams, u) -> np.ndarray | float:
    """K_eps exp(1/((u/eps)^2 - 1)) inside the support, exactly 0 outside."""
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    out = np.zeros(uu.shape, dtype=np.float64)
    inside = np.abs(uu) < params.epsilon
    r2 = (uu[inside] / params.epsilon) ** 2
    out[inside] = params.k_epsilon * np.exp(1.0 / (r2 - 1.0))
    return out if np.ndim(u) else float(out[0])


def support_integral(epsilon: float) -> float:
    """integral of exp(2/((u/eps)^2-1)) over the support, by adaptive quadrature."""
    if epsilon <= 0:
        raise ConfigurationError("epsilon must be positive")

    def integrand(u: float) -> float:
        r2 = (u / epsilon) ** 2
        if r2 >= 1.0:
            return 0.0
        return math.exp(2.0 / (r2 - 1.0))

    value, err = quad(integrand, -epsilon, epsilon, limit=200, epsabs=0.0, epsrel=1e-13)
    if err > _NORM_QUAD_TOL * value:
        raise AccuracyError(
            "normalization quadrature did not converge",
            estimate=value,
            error=err,
        )
    return value


def normalize_bump(epsilon: float) -> BumpParams:
    """K_eps such that the bump has unit L2 norm."""
    return BumpParams(epsilon=epsilon, k_epsilon=1.0 / math.sqrt(support_integral(epsilon)))


def sample_bump(params: BumpParams, grid: Grid) -> WaveFunction:
    return WaveFunction(grid, eval_bump(params, grid.points()), "uv")


@dataclass(frozen=True)
class FitResult:
    objective: str
    params: BumpParams
    residual: float


@dataclass(frozen=True)
class FitReport:
    primary: FitResult
    alternatives: tuple[FitResult, ...] = ()


def _check_target(target: WaveFunction) -> None:
    if target.representation != "uv":
        raise ConfigurationError("bump fitting works on uv states")
    n = norm(target)
    if abs(n - 1.0) > 1e-3:
        raise DataError(f"target norm {n:.6f} is not 1; normalize before fitting")
    flipped = target.samples[::-1]
    asym = float(np.max(np.abs(target.samples - flipped)))
    if asym > 1e-8 * float(np.max(np.abs(target.samples))):
        warnings.warn("target is not even-symmetric; bump fits are even", stacklevel=3)


def _l2_distance_sq(target: WaveFunction, epsilon: float, w: np.ndarray, u: np.ndarray) -> float:
    bump = eval_bump(normalize_bump(epsilon), u)
    diff = target.samples - bump
    return float(np.real(np.sum(w * diff * np.conj(diff))))


def fit_epsilon(
    target: WaveFunction,
    search: tuple[float, float] = DEFAULT_SEARCH,
    tol: float = 1e-6,
) -> FitReport:
    """Golden-section minimum of ||target - bump(eps)||^2 over eps.

    Raises SearchIntervalError when the minimum sits on the search boundary.
    The residual reported is the L2 distance (not its square).
    """
    _check_target(target)
    u = target.grid.points()
    w = simpson_weights(target.grid)
    lo, hi = search
    if not lo < hi:
        raise ConfigurationError("search interval must satisfy lo < hi")
    eps, dist_sq = golden_section(
        lambda e: _l2_distance_sq(target, e, w, u), lo, hi, tol=tol
    )
    result = FitResult(
        objective="l2",
        params=normalize_bump(eps),
        residual=math.sqrt(max(dist_sq, 0.0)),
    )
    return FitReport(primary=result)


def fit_alternatives(
    target: WaveFunction,
    search: tuple[float, float] = DEFAULT_SEARCH,
    tol: float = 1e-6,
) -> tuple[FitResult, ...]:
    """Fits under the non-primary objectives, for side-by-side reporting.

    sup_norm: minimax pointwise distance between the unit-norm states.
    free_amplitude: L2 distance after the best scalar rescale of the bump
    (equivalently, maximal overlap).
    peak_match: matches the center value target(0) = K_eps e^{-1} exactly.
    """
    _check_target(target)
    u = target.grid.points()
    w = simpson_weights(target.grid)
    lo, hi = search
    results = []

    def sup_obj(e: float) -> float:
        return float(np.max(np.abs(target.samples - eval_bump(normalize_bump(e), u))))

    eps, val = golden_section(sup_obj, lo, hi, tol=tol)
    results.append(FitResult("sup_norm", normalize_bump(eps), val))

    def free_amp_obj(e: float) -> float:
        bump = eval_bump(normalize_bump(e), u)
        overlap = complex(np.sum(w * np.conj(bump) * target.samples))
        bump_sq = float(np.sum(w * bump * bump))
        target_sq = float(np.real(np.sum(w * target.samples * np.conj(target.samples))))
        return target_sq - abs(overlap) ** 2 / bump_sq

    eps, val = golden_section(free_amp_obj, lo, hi, tol=tol)
    results.append(FitResult("free_amplitude", normalize_bump(eps), math.sqrt(max(val, 0.0))))

    center = float(np.real(target.samples[target.grid.index_of(0.0)]))

    def peak_obj(e: float) -> float:
        return abs(normalize_bump(e).k_epsilon * math.exp(-1.0) - center)

    eps, val = golden_section(peak_obj, lo, hi, tol=tol)
    results.append(FitResult("peak_match", normalize_bump(eps), val))
    return tuple(results)
