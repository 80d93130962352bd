"""Residual fields after removing leading resonance terms, and decay stats.

The N-order background of a state is what remains of the evolved field after
subtracting its first N+1 resonance terms e^{-g(n+1/2)t} a_n f_n^-(u).  On a
grid the delta-derivative family is rendered by its Gaussian mollification.
Data whose projection coefficients fall off faster than any power has a
background that dies with N; a power-law coefficient tail (the Gaussian
falls off with exponent -1/4) leaves a persistent background.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import AccuracyError, ConfigurationError, TruncationError
from .grid import WaveFunction, simpson_weights
from .propagate import PropagatorSpec, evolve
from .resonances import (
    MollifierSpec,
    default_mollifier,
    eval_f_minus_u_mollified,
    gamow_expand,
    pair_f_minus_u,
)

DecayClass = Literal["super_exponential", "power_law", "undetermined"]

COEFF_FLOOR = 1e-14
_REL_ERROR_FLOOR = 1e-12
_MIN_FIT_POINTS = 4


@dataclass(frozen=True)
class DecayFit:
    """Model competition result for ln|c_n| over an index range."""

    exponent: float
    decay_class: DecayClass
    n_used: tuple[int, ...]
    fit_rms: dict[str, float]


@dataclass(frozen=True)
class BackgroundReport:
    N: int
    gamma: float
    times: tuple[float, ...]
    tail_region: tuple[float, float]
    tail_rel_error: tuple[float, ...]
    decay_exponent: float
    decay_class: DecayClass


def background_parts(
    phi0: WaveFunction,
    N: int,
    t: float,
    spec: PropagatorSpec,
) -> tuple[WaveFunction, np.ndarray]:
    """The evolved field and the coefficient list, without mollification."""
    if phi0.representation != "uv":
        raise ConfigurationError("background analysis works on uv states")
    evolved = evolve(phi0, t, spec)
    coeffs = gamow_expand(phi0, N, spec.gamma) if N >= 0 else np.zeros(0, np.complex128)
    return evolved, coeffs


def background_field(
    phi0: WaveFunction,
    N: int,
    t: float,
    spec: PropagatorSpec,
    moll: MollifierSpec | None = None,
) -> WaveFunction:
    """Evolved state minus its first N+1 mollified resonance terms.

    N < 0 is the empty sum: the background equals the evolved field.
    Mollified delta derivatives grow like width^(-n), so orders beyond
    n = 10 or so (default mollifier) inject tail leakage above the genuine
    background level; keep N within that budget.
    """
    evolved, coeffs = background_parts(phi0, N, t, spec)
    if moll is None:
        moll = default_mollifier(phi0.grid)
    u = phi0.grid.points()
    acc = evolved.samples.copy()
    for n, a_n in enumerate(coeffs):
        term = a_n * math.exp(-spec.gamma * (n + 0.5) * t)
        acc -= term * eval_f_minus_u_mollified(n, u, moll)
    return WaveFunction(phi0.grid, acc, "uv")


def _model_rms(n: np.ndarray, logc: np.ndarray, regressor: np.ndarray) -> tuple[float, float]:
    design = np.vstack([np.ones_like(regressor), regressor]).T
    coef, *_ = np.linalg.lstsq(design, logc, rcond=None)
    resid = logc - design @ coef
    return float(coef[1]), float(np.sqrt(np.mean(resid**2)))


def coefficient_decay_order(
    phi0: WaveFunction,
    n_min: int,
    n_max: int,
    gamma: float = 1.0,
) -> DecayFit:
    """Competition between power-law, exponential, and super-exponential fits.

    Coefficients are taken on the parity subsequence the data actually
    populates (even data has identically-zero odd projections); values under
    the route's noise floor are dropped.  decay_class is the best-RMS model,
    with the plain exponential mapped to "undetermined" (neither signature).
    """
    if n_min < 0 or n_max < n_min:
        raise ConfigurationError("need 0 <= n_min <= n_max")
    ns = np.arange(n_min, n_max + 1)
    floor = COEFF_FLOOR
    try:
        coeffs = gamow_expand(phi0, n_max, gamma)[n_min:]
    except TruncationError:
        # non-decaying data has no monomial projection; the local dual
        # pairing still defines the delta-expansion coefficients (exact on
        # polynomial data); orders past the stencil noise budget are
        # unresolvable on this grid and are dropped
        vals = []
        for k in ns:
            try:
                vals.append(pair_f_minus_u(phi0, int(k)))
            except (AccuracyError, ConfigurationError):
                vals.append(0.0)
        coeffs = np.asarray(vals, dtype=np.complex128)
        # the stencil route resolves values only down to its own error
        # budget, far above the quadrature floor
        floor = 1e-8 * max(1.0, float(np.max(np.abs(phi0.samples))))
    mags = np.abs(coeffs)
    alive = mags > floor
    even_alive = int(np.sum(alive[ns % 2 == 0]))
    odd_alive = int(np.sum(alive[ns % 2 == 1]))
    if even_alive >= _MIN_FIT_POINTS and odd_alive == 0:
        keep = alive & (ns % 2 == 0)
    elif odd_alive >= _MIN_FIT_POINTS and even_alive == 0:
        keep = alive & (ns % 2 == 1)
    else:
        keep = alive
    keep = keep & (ns >= 1)  # log n regressor
    n_used = ns[keep]
    if len(n_used) < _MIN_FIT_POINTS:
        return DecayFit(float("nan"), "undetermined", tuple(int(k) for k in n_used), {})
    logc = np.log(mags[keep])
    nf = n_used.astype(np.float64)
    slope_pow, rms_pow = _model_rms(nf, logc, np.log(nf))
    _, rms_exp = _model_rms(nf, logc, nf)
    _, rms_sup = _model_rms(nf, logc, nf * np.log(nf))
    rms = {"power_law": rms_pow, "exponential": rms_exp, "super_exponential": rms_sup}
    best = min(rms, key=rms.get)
    decay_class: DecayClass = (
        "power_law"
        if best == "power_law"
        else ("super_exponential" if best == "super_exponential" else "undetermined")
    )
    return DecayFit(slope_pow, decay_class, tuple(int(k) for k in n_used), rms)


def tail_compare(
    gauss: WaveFunction,
    bump: WaveFunction,
    N: int,
    times: Sequence[float],
    spec: PropagatorSpec,
    epsilon0: float,
    moll: MollifierSpec | None = None,
) -> BackgroundReport:
    """Median relative gap between the background and the state difference.

    For each time: evolve both states, build the N-order background of the
    first, and compare it to (first - second) over the tail region
    |u| in [1.2 * eps0 * e^{-g t}, grid edge].  The inner edge tracks the
    contracting support; it is also kept clear of the mollifier footprint.
    """
    if gauss.representation != "uv" or bump.representation != "uv":
        raise ConfigurationError("tail_compare works on uv states")
    if gauss.grid != bump.grid:
        raise ConfigurationError("states must share a grid")
    if epsilon0 <= 0:
        raise ConfigurationError("epsilon0 must be positive")
    times = tuple(float(t) for t in times)
    if not times:
        raise ConfigurationError("need at least one time")
    if moll is None:
        moll = default_mollifier(gauss.grid)
    grid = gauss.grid
    u = grid.points()
    edge = min(abs(grid.u_min), abs(grid.u_max))
    footprint = 8.0 * moll.width
    coeffs = gamow_expand(gauss, N, spec.gamma) if N >= 0 else np.zeros(0, np.complex128)
    errors = []
    inner_last = 0.0
    for t in times:
        inner = max(1.2 * epsilon0 * math.exp(-spec.gamma * t), footprint)
        inner_last = inner
        mask = (np.abs(u) >= inner) & (np.abs(u) <= edge)
        if not np.any(mask):
            raise ConfigurationError(
                f"empty tail region [{inner:.3g}, {edge:.3g}]; widen the grid"
            )
        evolved_g = evolve(gauss, t, spec)
        evolved_b = evolve(bump, t, spec)
        bg = evolved_g.samples.copy()
        for n, a_n in enumerate(coeffs):
            term = a_n * math.exp(-spec.gamma * (n + 0.5) * t)
            bg -= term * eval_f_minus_u_mollified(n, u, moll)
        diff = evolved_g.samples - evolved_b.samples
        denom = np.maximum(np.abs(diff[mask]), _REL_ERROR_FLOOR)
        rel = np.abs(bg[mask] - diff[mask]) / denom
        errors.append(float(np.median(rel)))
    return BackgroundReport(
        N=N,
        gamma=spec.gamma,
        times=times,
        tail_region=(inner_last, edge),
        tail_rel_error=tuple(errors),
        decay_exponent=float("nan"),
        decay_class="undetermined",
    )


def partial_sum_increment(
    phi0: WaveFunction,
    N: int,
    moll: MollifierSpec | None = None,
) -> float:
    """Max over the grid of the (N+1)-th mollified term at t = 0.

    A vanishing sequence of increments is the convergence signature; for
    power-law coefficient data the increments plateau instead.
    """
    if moll is None:
        moll = default_mollifier(phi0.grid)
    coeffs = gamow_expand(phi0, N + 1, 1.0)
    term = coeffs[N + 1] * eval_f_minus_u_mollified(N + 1, phi0.grid.points(), moll)
    return float(np.max(np.abs(term)))


def tail_energy(field: WaveFunction, inner: float) -> float:
    """L2 mass of the field outside |u| < inner."""
    u = field.grid.points()
    w = simpson_weights(field.grid)
    mask = np.abs(u) >= inner
    return float(np.sqrt(np.real(np.sum(w[mask] * np.abs(field.samples[mask]) ** 2))))
