"""Unitary map between the damped-motion (uv) and oscillator (xp) coordinates.

The kernel is a quadratic phase,

    (T phi)(x) = C int phi(u) exp(i S(x,u)) du,
    S(x, u) = g x^2/2 - sqrt(2g) x u + u^2/2,
    C = e^{-i pi/8} (g / (2 pi^2))^{1/4},

which factors as chirp(u) -> Fourier at frequency sqrt(2g) x -> chirp(x).
Two evaluation paths are kept: dense quadrature of the kernel (reference) and
the chirp-Fourier-chirp fast path on a chirp-z kernel.  The default mode runs
both and cross-checks them; disagreement beyond 1e-5 relative is an accuracy
failure, not a warning.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.signal import czt

from .errors import (
    AccuracyError,
    CapabilityError,
    ConfigurationError,
    TruncationWarning,
)
from .grid import Grid, WaveFunction, interpolate_values, simpson_weights
from .numerics import gauss_legendre_panels, neville_to_zero
from .resonances import eval_f_pm_x, eval_f_plus_u
from .special import hermite_log_scaled, log_factorial

QuadratureMethod = Literal["direct", "chirp_fourier_chirp", "self_check"]

SELF_CHECK_TOL = 1e-5
_BOUNDARY_RATIO = 1e-12
_CHUNK = 256


@dataclass(frozen=True)
class TransformParams:
    gamma: float = 1.0
    method: QuadratureMethod = "self_check"

    def __post_init__(self):
        if self.gamma <= 0:
            raise ConfigurationError("gamma must be positive")
        if self.method not in ("direct", "chirp_fourier_chirp", "self_check"):
            raise ConfigurationError(f"unknown method {self.method!r}")

    @property
    def c_tilde(self) -> complex:
        return np.exp(-1j * math.pi / 8.0) * (self.gamma / (2.0 * math.pi**2)) ** 0.25


def _warn_if_not_decayed(samples: np.ndarray, what: str) -> None:
    peak = float(np.max(np.abs(samples)))
    if peak == 0.0:
        return
    edge = max(abs(samples[0]), abs(samples[-1]))
    if edge > _BOUNDARY_RATIO * peak:
        warnings.warn(
            f"{what}: integrand not decayed at the grid edge "
            f"(edge/peak = {edge / peak:.2e}); tail mass is truncated",
            TruncationWarning,
            stacklevel=3,
        )


def _direct_sum(
    values_and_weights: np.ndarray,
    u: np.ndarray,
    x: np.ndarray,
    gamma: float,
    sign: float,
) -> np.ndarray:
    """Dense quadrature of the generating-function kernel, chunked to bound
    memory.  sign=+1 integrates over u onto x targets; sign=-1 integrates the
    conjugate kernel over x onto u targets.  The gamma quadratic always sits
    on the oscillator coordinate x."""
    targets = x if sign > 0 else u
    sources = u if sign > 0 else x
    out = np.empty(len(targets), dtype=np.complex128)
    root = math.sqrt(2.0 * gamma)
    for lo in range(0, len(targets), _CHUNK):
        ts = targets[lo : lo + _CHUNK, None]
        ss = sources[None, :]
        if sign > 0:
            phase = gamma * ts**2 / 2.0 - root * ts * ss + ss**2 / 2.0
        else:
            phase = -(gamma * ss**2 / 2.0 - root * ss * ts + ts**2 / 2.0)
        out[lo : lo + _CHUNK] = np.exp(1j * phase) @ values_and_weights
    return out


def _chirp_z_sum(
    samples: np.ndarray, src: Grid, freqs: np.ndarray, sign: float
) -> np.ndarray:
    """h * sum_k samples_k exp(sign * i * f_j * u_k) on a uniform f_j ladder."""
    h = src.spacing
    f0 = freqs[0]
    df = freqs[1] - freqs[0] if len(freqs) > 1 else 0.0
    a = np.exp(-sign * 1j * f0 * h)
    w = np.exp(sign * 1j * df * h)
    spectrum = czt(samples, m=len(freqs), w=w, a=a)
    return h * np.exp(sign * 1j * freqs * src.u_min) * spectrum


def _forward_direct(phi: WaveFunction, params: TransformParams, target: Grid) -> np.ndarray:
    u = phi.grid.points()
    vw = phi.samples * simpson_weights(phi.grid)
    return params.c_tilde * _direct_sum(vw, u, target.points(), params.gamma, +1.0)


def _forward_chirp(phi: WaveFunction, params: TransformParams, target: Grid) -> np.ndarray:
    u = phi.grid.points()
    x = target.points()
    g = phi.samples * np.exp(1j * u**2 / 2.0)
    freqs = math.sqrt(2.0 * params.gamma) * x
    spectrum = _chirp_z_sum(g, phi.grid, freqs, sign=-1.0)
    return params.c_tilde * np.exp(1j * params.gamma * x**2 / 2.0) * spectrum


def _inverse_direct(phi: WaveFunction, params: TransformParams, target: Grid) -> np.ndarray:
    x = phi.grid.points()
    vw = phi.samples * simpson_weights(phi.grid)
    return np.conj(params.c_tilde) * _direct_sum(vw, target.points(), x, params.gamma, -1.0)


def _inverse_chirp(phi: WaveFunction, params: TransformParams, target: Grid) -> np.ndarray:
    x = phi.grid.points()
    uu = target.points()
    g = phi.samples * np.exp(-1j * params.gamma * x**2 / 2.0)
    freqs = math.sqrt(2.0 * params.gamma) * uu
    spectrum = _chirp_z_sum(g, phi.grid, freqs, sign=+1.0)
    return np.conj(params.c_tilde) * np.exp(-1j * uu**2 / 2.0) * spectrum


def _run(
    phi: WaveFunction,
    params: TransformParams,
    target: Grid,
    direct_fn,
    chirp_fn,
    out_rep: str,
) -> WaveFunction:
    _warn_if_not_decayed(phi.samples, "coordinate transform")
    if params.method == "direct":
        out = direct_fn(phi, params, target)
    elif params.method == "chirp_fourier_chirp":
        out = chirp_fn(phi, params, target)
    else:
        out = direct_fn(phi, params, target)
        fast = chirp_fn(phi, params, target)
        scale = float(np.max(np.abs(out)))
        disagreement = float(np.max(np.abs(out - fast))) / max(scale, 1e-300)
        if disagreement > SELF_CHECK_TOL:
            raise AccuracyError(
                "transform paths disagree", disagreement=disagreement
            )
    return WaveFunction(target, out, out_rep)  # type: ignore[arg-type]


def forward_transform(
    phi: WaveFunction, params: TransformParams, target: Grid
) -> WaveFunction:
    """Map a uv state onto the oscillator coordinate."""
    if phi.representation != "uv":
        raise ConfigurationError("forward_transform expects a uv state")
    return _run(phi, params, target, _forward_direct, _forward_chirp, "xp")


def inverse_transform(
    phi: WaveFunction, params: TransformParams, target: Grid
) -> WaveFunction:
    """Map an oscillator-coordinate state back to the uv coordinate."""
    if phi.representation != "xp":
        raise ConfigurationError("inverse_transform expects an xp state")
    return _run(phi, params, target, _inverse_direct, _inverse_chirp, "uv")


def v_lambda(
    state: WaveFunction | Callable[[np.ndarray], np.ndarray],
    lam: complex,
    grid: Grid | None = None,
    representation: str = "xp",
) -> WaveFunction:
    """Scaling-family member: phi(x) -> e^{-i lam/2} phi(e^{-i lam} x).

    Grid data supports purely imaginary ``lam`` only (the argument scale
    e^{-i lam} is then a positive real number, the unitary case).  Closed-form
    callables accept any complex ``lam``: the scaled argument is handed to the
    callable, which must accept complex input.
    """
    lam = complex(lam)
    scale = np.exp(-1j * lam)
    phase = np.exp(-1j * lam / 2.0)
    if callable(state) and not isinstance(state, WaveFunction):
        if grid is None:
            raise ConfigurationError("a target grid is required for callable states")
        x = grid.points()
        vals = phase * np.asarray(state(scale * x), dtype=np.complex128)
        return WaveFunction(grid, vals, representation)  # type: ignore[arg-type]
    if abs(lam.real) > 1e-15:
        raise CapabilityError(
            "grid data supports purely imaginary lambda only (real scale); "
            "pass a callable for complex rotation angles"
        )
    wf: WaveFunction = state
    tgt = grid if grid is not None else wf.grid
    real_scale = float(scale.real)
    vals = phase * interpolate_values(wf.samples, wf.grid, real_scale * tgt.points())
    return WaveFunction(tgt, vals, wf.representation)


def _transform_monomial_regulated(
    n: int,
    x: np.ndarray,
    gamma: float,
    eta0: float = 0.2,
    ratio: float = 1.5,
    levels: int = 9,
) -> np.ndarray:
    """Transform of the monomial resonance via a regulator ladder.

    The monomial family is not integrable, so each ladder rung transforms
    f_n^+(u) e^{-eta u^2} with panel Gauss-Legendre quadrature; the ladder is
    extrapolated to eta -> 0.
    """
    ctilde = np.exp(-1j * math.pi / 8.0) * (gamma / (2.0 * math.pi**2)) ** 0.25
    etas = [eta0 / ratio**k for k in range(levels)]
    rungs = []
    for eta in etas:
        u2 = (13.0 * math.log(10.0) + 0.5 * n * (math.log(max(n / (2 * eta), 1.0)) + 1.0)) / eta
        u_max = math.sqrt(u2)
        omega = u_max + math.sqrt(2.0 * gamma) * float(np.max(np.abs(x)))
        panel = min(1.0, 50.0 / omega)
        nodes, weights = gauss_legendre_panels(-u_max, u_max, panel, order=48)
        fn = eval_f_plus_u(n, nodes) * np.exp(-eta * nodes**2)
        phase = (
            gamma * x[:, None] ** 2 / 2.0
            - math.sqrt(2.0 * gamma) * x[:, None] * nodes[None, :]
            + nodes[None, :] ** 2 / 2.0
        )
        rungs.append(ctilde * (np.exp(1j * phase) @ (weights * fn)))
    value, correction = neville_to_zero(etas, rungs)
    scale = float(np.max(np.abs(value)))
    if correction > 1e-2 * max(scale, 1e-300):
        raise AccuracyError(
            "monomial transform ladder did not converge", last_correction=correction
        )
    return value


def _transform_delta_family_closed_form(n: int, x: np.ndarray, gamma: float) -> np.ndarray:
    """Exact transform of the delta-derivative resonance.

    Differentiating the kernel n times at u = 0 gives
    C e^{i g x^2/2} 2^{-n/2} e^{-i n pi/4} H_n(sqrt(g) e^{-i pi/4} x)/sqrt(n!).
    """
    ctilde = np.exp(-1j * math.pi / 8.0) * (gamma / (2.0 * math.pi**2)) ** 0.25
    z = math.sqrt(gamma) * np.exp(-1j * math.pi / 4.0) * x
    mant, logsc = hermite_log_scaled(n, z)
    logpref = -0.5 * (n * math.log(2.0) + log_factorial(n))
    return (
        ctilde
        * np.exp(1j * gamma * x**2 / 2.0)
        * np.exp(-1j * n * math.pi / 4.0)
        * mant
        * np.exp(logsc + logpref)
    )


@dataclass(frozen=True)
class ResonanceTransformCheck:
    n: int
    sign: str
    ratio: complex
    max_variation: float


def transform_resonance_check(
    n: int,
    sign: str,
    params: TransformParams,
    probe_half_width: float = 2.0,
    probe_points: int = 41,
) -> ResonanceTransformCheck:
    """Fitted proportionality ratio f_n^sign(x) / T[f_n^sign(u)](x).

    The measured ratio is e^{i n pi/4} (2 pi)^{-1/4} for the monomial family
    and e^{i n pi/4} (2 pi)^{+1/4} for the delta-derivative family.  Raises
    AccuracyError when the pointwise ratio varies by more than 1% across the
    probe window.
    """
    if sign not in ("+", "-"):
        raise ConfigurationError("sign must be '+' or '-'")
    x = np.linspace(-probe_half_width, probe_half_width, probe_points)
    if sign == "+":
        transformed = _transform_monomial_regulated(n, x, params.gamma)
    else:
        transformed = _transform_delta_family_closed_form(n, x, params.gamma)
    field = eval_f_pm_x(n, sign, x, params.gamma)
    # least-squares scalar fit field = r * transformed
    denom = np.vdot(transformed, transformed)
    r = complex(np.vdot(transformed, field) / denom)
    mask = np.abs(transformed) > 0.1 * float(np.max(np.abs(transformed)))
    variation = float(
        np.max(np.abs(field[mask] / transformed[mask] - r)) / abs(r)
    )
    if variation > 0.01:
        raise AccuracyError(
            "resonance transform ratio is not constant across the probe window",
            variation=variation,
        )
    return ResonanceTransformCheck(n=n, sign=sign, ratio=r, max_variation=variation)
