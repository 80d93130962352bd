"""Special functions needed by the resonance and continuum machinery.

Everything here works for complex arguments: physicists' Hermite polynomials
(plain and log-scaled recurrences), the confluent hypergeometric series
M(a, b, z), the parabolic cylinder function D_nu built from its two-term
Kummer decomposition, and the leading-order Stirling forms used for
large-index asymptotics.  SciPy supplies log-gamma and reciprocal gamma;
the series code is local because its accuracy budget is part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.special as sp

from .errors import AccuracyError, CapabilityError, DomainError

HERMITE_MAX_DEGREE = 512
HERMITE_SCALED_THRESHOLD = 60


@dataclass(frozen=True)
class SpecialFnConfig:
    """Accuracy/budget knobs for the series evaluations."""

    series_tol: float = 1e-14
    series_max_terms: int = 500
    # |z^2/2| budget for D_nu; beyond it the Kummer series is out of contract
    pcf_arg_budget: float = 50.0


DEFAULT_SPECIAL_CONFIG = SpecialFnConfig()


def _check_degree(n: int) -> None:
    if n < 0:
        raise DomainError("Hermite degree must be >= 0")
    if n > HERMITE_MAX_DEGREE:
        raise CapabilityError(
            f"Hermite degree {n} exceeds supported maximum {HERMITE_MAX_DEGREE}"
        )


def hermite(n: int, z) -> np.ndarray | complex:
    """Physicists' Hermite polynomial H_n(z) by forward recurrence.

    Forward recurrence tracks the dominant solution, so it is stable for H_n;
    magnitudes can overflow float range for large n*|z| (use
    :func:`hermite_log_scaled` there).
    """
    _check_degree(n)
    zz = np.asarray(z, dtype=np.complex128)
    h_prev = np.zeros_like(zz)
    h = np.ones_like(zz)
    for k in range(n):
        h_prev, h = h, 2.0 * zz * h - 2.0 * k * h_prev
    return h if np.ndim(z) else complex(h)


def hermite_log_scaled(n: int, z) -> tuple[np.ndarray, np.ndarray]:
    """H_n(z) as (mantissa, log_scale) with H_n = mantissa * exp(log_scale).

    Per-element rescaling keeps the recurrence inside float range for any
    supported degree.
    """
    _check_degree(n)
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    h_prev = np.zeros_like(zz)
    h = np.ones_like(zz)
    log_scale = np.zeros(zz.shape, dtype=np.float64)
    for k in range(n):
        h_prev, h = h, 2.0 * zz * h - 2.0 * k * h_prev
        mag = np.abs(h)
        big = mag > 1e120
        if np.any(big):
            scale = np.where(big, mag, 1.0)
            h = h / scale
            h_prev = h_prev / scale
            log_scale += np.where(big, np.log(mag), 0.0)
    return h, log_scale


def log_gamma(z) -> np.ndarray | complex:
    """Principal-branch log Gamma; poles raise DomainError."""
    zz = np.asarray(z, dtype=np.complex128)
    pole = (zz.real <= 0) & (np.abs(zz.imag) == 0) & (zz.real == np.round(zz.real))
    if np.any(pole):
        raise DomainError("log_gamma pole at non-positive integer argument")
    out = sp.loggamma(zz)
    return out if np.ndim(z) else complex(out)


def reciprocal_gamma(z) -> np.ndarray | complex:
    """1/Gamma(z); entire, zero at the poles of Gamma."""
    out = sp.rgamma(np.asarray(z, dtype=np.complex128))
    return out if np.ndim(z) else complex(out)


def kummer_m(a, b, z, config: SpecialFnConfig = DEFAULT_SPECIAL_CONFIG):
    """Confluent hypergeometric M(a, b, z) by its power series.

    Vectorised over ``z``.  Raises AccuracyError (with the largest unconverged
    term magnitude) if ``series_max_terms`` is hit.
    """
    a = complex(a)
    b = complex(b)
    if b.imag == 0 and b.real <= 0 and b.real == round(b.real):
        raise DomainError("kummer_m undefined for non-positive integer b")
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    term = np.ones_like(zz)
    total = np.ones_like(zz)
    tol = config.series_tol
    for k in range(config.series_max_terms):
        term = term * ((a + k) / (b + k)) * zz / (k + 1.0)
        total = total + term
        if np.all(np.abs(term) <= tol * np.maximum(np.abs(total), 1e-30)):
            return total if np.ndim(z) else complex(total[0])
    raise AccuracyError(
        "Kummer series did not converge",
        last_term=float(np.max(np.abs(term))),
        max_terms=config.series_max_terms,
    )


def parabolic_cylinder_d(nu, z, config: SpecialFnConfig = DEFAULT_SPECIAL_CONFIG):
    """Parabolic cylinder D_nu(z) from its Kummer decomposition.

    D_nu(z) = 2^{nu/2} e^{-z^2/4} sqrt(pi) * [ M(-nu/2, 1/2, z^2/2)/Gamma((1-nu)/2)
              - sqrt(2) z M((1-nu)/2, 3/2, z^2/2)/Gamma(-nu/2) ].

    Enforces the series argument budget |z^2/2| <= pcf_arg_budget; reciprocal
    gammas make the integer-degree cases exact limits (one term drops out).
    """
    nu = complex(nu)
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    w = 0.5 * zz * zz
    too_big = np.abs(w) > config.pcf_arg_budget
    if np.any(too_big):
        raise CapabilityError(
            f"|z^2/2| up to {float(np.max(np.abs(w))):.3g} exceeds the series "
            f"budget {config.pcf_arg_budget:g}"
        )
    t1 = reciprocal_gamma((1.0 - nu) / 2.0) * kummer_m(-nu / 2.0, 0.5, w, config)
    t2 = (np.sqrt(2.0) * zz * reciprocal_gamma(-nu / 2.0)
          * kummer_m((1.0 - nu) / 2.0, 1.5, w, config))
    pref = np.exp(0.5 * nu * np.log(2.0)) * np.sqrt(np.pi) * np.exp(-0.5 * w)
    out = pref * (t1 - t2)
    return out if np.ndim(z) else complex(out[0])


def stirling_log_gamma(z) -> np.ndarray | complex:
    """Leading-order Stirling approximation of log Gamma(z)."""
    zz = np.asarray(z, dtype=np.complex128)
    out = 0.5 * np.log(2.0 * np.pi / zz) + zz * (np.log(zz) - 1.0)
    return out if np.ndim(z) else complex(out)


def stirling_gamma(z) -> np.ndarray | float:
    """Leading-order Stirling approximation of Gamma(z), real z >= 2."""
    zz = np.asarray(z, dtype=np.float64)
    if np.any(zz < 2.0):
        raise DomainError("stirling_gamma expects z >= 2")
    out = np.sqrt(2.0 * np.pi / zz) * (zz / np.e) ** zz
    return out if np.ndim(z) else float(out)


def stirling_factorial(n) -> np.ndarray | float:
    """Leading-order Stirling approximation of n!."""
    nn = np.asarray(n, dtype=np.float64)
    if np.any(nn < 2):
        raise DomainError("stirling_factorial expects n >= 2")
    out = np.sqrt(2.0 * np.pi * nn) * (nn / np.e) ** nn
    return out if np.ndim(n) else float(out)


def log_factorial(n) -> np.ndarray | float:
    """Exact log(n!) via log Gamma (real, non-negative integers)."""
    out = sp.gammaln(np.asarray(n, dtype=np.float64) + 1.0)
    return out if np.ndim(n) else float(out)
