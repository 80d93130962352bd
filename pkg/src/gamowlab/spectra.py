"""Continuous-spectrum eigenfunctions and their complex-pole residues.

Six families indexed by a half-line (uv coordinate) or a parity branch (xp
coordinate).  In uv the fields are complex powers supported on one half-line;
in xp they are parabolic cylinder functions of complex order.  Each family is
a meromorphic function of the energy with simple poles on one half of the
imaginary axis; the residues there are scalar multiples of the resonance
families, which is what ties the continuum picture to the discrete one.

Conventions fixed here (the source material leaves branches implicit):
principal roots throughout, sqrt(-2*g*i) = sqrt(2g) e^{-i pi/4} and
sqrt(+2*g*i) = sqrt(2g) e^{+i pi/4}, and i^{(nu+1)/2} = exp(i pi (nu+1)/4).

Both xp families satisfy H F = +E F for H = -d^2/dx^2/2 - g^2 x^2/2; the two
differ by which imaginary half-axis carries their poles, not by an eigenvalue
sign.  For real E they are pointwise conjugates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import (
    AccuracyError,
    CapabilityError,
    ConfigurationError,
    DomainError,
    PoleProximityError,
)
from .grid import Grid
from .numerics import gauss_legendre_panels
from .resonances import eval_f_pm_x
from .special import (
    DEFAULT_SPECIAL_CONFIG,
    SpecialFnConfig,
    hermite,
    hermite_log_scaled,
    log_factorial,
    log_gamma,
    parabolic_cylinder_d,
)

FamilyName = Literal["psi_plus", "psi_minus", "chi_plus", "chi_minus", "eta_plus", "eta_minus"]

_FAMILIES = ("psi_plus", "psi_minus", "chi_plus", "chi_minus", "eta_plus", "eta_minus")
POLE_PROXIMITY_FACTOR = 1e-6
DEFAULT_RESIDUE_DELTA_FACTOR = 1e-3
_CIRCLE_ANGLES = (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)


@dataclass(frozen=True)
class ContinuumFamily:
    family: FamilyName
    gamma: float = 1.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if self.gamma <= 0:
            raise ConfigurationError("gamma must be positive")

    @property
    def representation(self) -> str:
        return "uv" if self.family.startswith("psi") else "xp"

    @property
    def pole_half_axis(self) -> float:
        """+1 when the poles sit at +i g(n+1/2), -1 when at -i g(n+1/2)."""
        return +1.0 if self.family.startswith("eta") else -1.0


def pole_lattice(fam: ContinuumFamily, n_max: int) -> np.ndarray:
    """The family's simple poles i*s*g(n+1/2), n = 0..n_max."""
    n = np.arange(n_max + 1, dtype=np.float64)
    return 1j * fam.pole_half_axis * fam.gamma * (n + 0.5)


def _nearest_pole(fam: ContinuumFamily, E: complex) -> complex:
    s = fam.pole_half_axis
    n = max(0, int(round(s * E.imag / fam.gamma - 0.5)))
    return 1j * s * fam.gamma * (n + 0.5)


def _guard_pole(fam: ContinuumFamily, E: complex) -> None:
    pole = _nearest_pole(fam, E)
    if abs(E - pole) < POLE_PROXIMITY_FACTOR * fam.gamma:
        raise PoleProximityError(
            f"E = {E} within {POLE_PROXIMITY_FACTOR:g}*gamma of the pole {pole}"
        )


def _nu(E: complex, gamma: float) -> complex:
    return -(1j * E / gamma + 0.5)


def eval_psi(fam: ContinuumFamily, E: complex, u, check_pole: bool = True):
    """Half-line power fields (2 pi g)^{-1/2} u_{+/-}^{-(iE/g + 1/2)}.

    The plus family is supported on u > 0, the minus family on u < 0; the
    sample u = 0 is excluded (distributional point).
    """
    if fam.representation != "uv":
        raise ConfigurationError("eval_psi expects a psi family")
    if check_pole:
        _guard_pole(fam, complex(E))
    uu = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any(uu == 0.0):
        raise DomainError("psi fields are not defined pointwise at u = 0")
    lam = _nu(complex(E), fam.gamma) + 0.0
    support = uu > 0.0 if fam.family == "psi_plus" else uu < 0.0
    out = np.zeros(uu.shape, dtype=np.complex128)
    mag = np.abs(uu[support])
    out[support] = np.exp(lam * np.log(mag)) / math.sqrt(2.0 * math.pi * fam.gamma)
    return out if np.ndim(u) else complex(out[0])


def _chi_eta_values(
    fam: ContinuumFamily, E: complex, x: np.ndarray, config: SpecialFnConfig
) -> np.ndarray:
    gamma = fam.gamma
    nu = _nu(E, gamma)
    c_tilde = np.exp(-1j * math.pi / 8.0) * (gamma / (2.0 * math.pi**2)) ** 0.25
    front = c_tilde / math.sqrt(2.0 * math.pi * gamma)
    phase = np.exp(1j * math.pi * (nu + 1.0) / 4.0)
    xx = np.asarray(x, dtype=np.float64)
    if fam.family in ("chi_minus", "eta_minus"):
        xx = -xx
    root = math.sqrt(2.0 * gamma)
    if fam.family.startswith("chi"):
        gamma_factor = np.exp(log_gamma(nu + 1.0))
        d = parabolic_cylinder_d(-nu - 1.0, -root * np.exp(-1j * math.pi / 4.0) * xx, config)
    else:
        gamma_factor = np.exp(log_gamma(-nu))
        d = parabolic_cylinder_d(nu, -root * np.exp(1j * math.pi / 4.0) * xx, config)
    return front * phase * gamma_factor * d


def eval_chi(
    fam: ContinuumFamily,
    E: complex,
    x,
    config: SpecialFnConfig = DEFAULT_SPECIAL_CONFIG,
    check_pole: bool = True,
):
    """Oscillator-coordinate continuum field with poles at -i g(n+1/2)."""
    if not fam.family.startswith("chi"):
        raise ConfigurationError("eval_chi expects a chi family")
    if check_pole:
        _guard_pole(fam, complex(E))
    out = _chi_eta_values(fam, complex(E), np.atleast_1d(x), config)
    return out if np.ndim(x) else complex(out[0])


def eval_eta(
    fam: ContinuumFamily,
    E: complex,
    x,
    config: SpecialFnConfig = DEFAULT_SPECIAL_CONFIG,
    check_pole: bool = True,
):
    """Oscillator-coordinate continuum field with poles at +i g(n+1/2)."""
    if not fam.family.startswith("eta"):
        raise ConfigurationError("eval_eta expects an eta family")
    if check_pole:
        _guard_pole(fam, complex(E))
    out = _chi_eta_values(fam, complex(E), np.atleast_1d(x), config)
    return out if np.ndim(x) else complex(out[0])


def eval_family(fam: ContinuumFamily, E: complex, points, check_pole: bool = True):
    if fam.family.startswith("psi"):
        return eval_psi(fam, E, points, check_pole)
    if fam.family.startswith("chi"):
        return eval_chi(fam, E, points, check_pole=check_pole)
    return eval_eta(fam, E, points, check_pole=check_pole)


@dataclass(frozen=True)
class ResidueEstimate:
    n: int
    pole: complex
    estimate: np.ndarray
    reference: np.ndarray
    max_rel_error: float


def residue_reference(fam: ContinuumFamily, n: int, x: np.ndarray) -> np.ndarray:
    """Closed-form residue of the xp families at their n-th pole.

    chi residues are scalar multiples of f_n^-, eta residues of f_n^+; the
    scalars below were pinned by matching circle-averaged contour estimates
    to the resonance fields (agreement ~1e-12 at gamma = 1):

        Res[chi_+; -E_n] = +i sqrt(g) (2 pi)^{-1/4} e^{-i n pi/4} / sqrt(2 pi n!) f_n^-(x)
        Res[eta_+; +E_n] = -i sqrt(g) (2 pi)^{-1/4} e^{+i n pi/4} / sqrt(2 pi n!) f_n^+(x)

    The minus branches follow by x -> -x, i.e. a (-1)^n parity factor.
    """
    gamma = fam.gamma
    if fam.representation != "xp":
        raise ConfigurationError("grid residue references exist for xp families only")
    # sqrt(g) (2 pi)^{-1/4} / sqrt(2 pi n!), factorial kept in log space
    base = math.sqrt(gamma) * (2.0 * math.pi) ** -0.25 * math.exp(
        -0.5 * math.log(2.0 * math.pi) - 0.5 * float(log_factorial(n))
    )
    xx = np.asarray(x, dtype=np.float64)
    sign_x = -1.0 if fam.family.endswith("minus") else 1.0
    if fam.family.startswith("chi"):
        scalar = 1j * base * np.exp(-1j * n * math.pi / 4.0)
        return scalar * eval_f_pm_x(n, "-", sign_x * xx, gamma)
    scalar = -1j * base * np.exp(1j * n * math.pi / 4.0)
    return scalar * eval_f_pm_x(n, "+", sign_x * xx, gamma)


def _circle_average(
    fam: ContinuumFamily, pole: complex, delta: float, x: np.ndarray
) -> tuple[np.ndarray, float]:
    """Mean of (E - pole) * field over 4 contour points; also the spread."""
    samples = []
    for theta in _CIRCLE_ANGLES:
        offset = delta * np.exp(1j * theta)
        samples.append(offset * eval_family(fam, pole + offset, x, check_pole=False))
    stack = np.stack(samples)
    mean = stack.mean(axis=0)
    spread = float(np.max(np.abs(stack - mean[None, :])))
    return mean, spread


def circle_fluctuation(fam: ContinuumFamily, n: int, x: np.ndarray, delta: float) -> float:
    """Max deviation of single contour points from the circle average."""
    pole = complex(pole_lattice(fam, n)[n])
    _, spread = _circle_average(fam, pole, delta, np.asarray(x, dtype=np.float64))
    return spread


def residue_at_pole(
    fam: ContinuumFamily,
    n: int,
    grid: Grid,
    delta: float | None = None,
) -> ResidueEstimate:
    """Contour estimate of the residue at the family's n-th pole.

    Four-point circle averaging cancels the analytic Laurent terms through
    O(delta^2) (and the odd ones exactly), so the default delta = 1e-3*gamma
    reaches the quadratically small bias regime.  The estimate is recomputed
    at delta/2; if the circle spread fails to shrink the pole is not simple
    at working precision and an accuracy error is raised.
    """
    if fam.representation != "xp":
        raise ConfigurationError(
            "grid residues exist for xp families; use residue_psi_weak in uv"
        )
    if delta is None:
        delta = DEFAULT_RESIDUE_DELTA_FACTOR * fam.gamma
    pole = complex(pole_lattice(fam, n)[n])
    x = grid.points()
    coarse, spread0 = _circle_average(fam, pole, delta, x)
    estimate, spread1 = _circle_average(fam, pole, delta / 2.0, x)
    scale = float(np.max(np.abs(estimate)))
    if spread1 > 0.75 * spread0 and spread1 > 1e-10 * scale:
        raise AccuracyError(
            "contour average not converging under delta halving",
            spread_coarse=spread0,
            spread_fine=spread1,
        )
    reference = residue_reference(fam, n, x)
    mask = np.abs(reference) > 1e-8
    if not np.any(mask):
        raise AccuracyError("reference residue below threshold on the whole grid")
    rel = np.abs(estimate[mask] - reference[mask]) / np.abs(reference[mask])
    return ResidueEstimate(
        n=n,
        pole=pole,
        estimate=estimate,
        reference=reference,
        max_rel_error=float(np.max(rel)),
    )


@dataclass(frozen=True)
class SchwartzTest:
    """Gaussian test function e^{-a(u-b)^2} with exact derivative data."""

    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ConfigurationError("width parameter a must be positive")

    def __call__(self, u):
        uu = np.asarray(u, dtype=np.float64)
        return np.exp(-self.a * (uu - self.b) ** 2)

    def derivative_at_zero(self, k: int) -> float:
        t0 = -math.sqrt(self.a) * self.b
        hk = float(np.real(hermite(k, t0)))
        return self.a ** (k / 2.0) * (-1.0) ** k * hk * math.exp(-self.a * self.b**2)

    def taylor_remainder(self, u: np.ndarray, order: int) -> np.ndarray:
        """Sum of Taylor terms beyond ``order``, summed directly in log space.

        Subtracting the truncated series from the function cancels
        catastrophically for small u; the explicit tail does not.  Terms decay
        superexponentially once k exceeds ~2 a u^2, so the loop is short.
        """
        u = np.asarray(u, dtype=np.float64)
        t0 = -math.sqrt(self.a) * self.b
        base = -self.a * self.b**2
        with np.errstate(divide="ignore"):
            logu = np.where(u > 0, np.log(np.where(u > 0, u, 1.0)), -np.inf)
        acc = np.zeros_like(u)
        for k in range(order + 1, order + 81):
            mant, logsc = hermite_log_scaled(k, t0)
            sign = (-1.0) ** k * np.sign(mant.real)
            logmag = (
                float(logsc)
                + math.log(max(abs(float(mant.real)), 1e-300))
                + 0.5 * k * math.log(self.a)
                + base
                - float(log_factorial(k))
                + k * logu
            )
            term = sign * np.exp(logmag)
            acc = acc + term
            if float(np.max(np.abs(term))) < 1e-18 * max(float(np.max(np.abs(acc))), 1e-300):
                break
        return acc

    def reflected(self) -> "SchwartzTest":
        return SchwartzTest(self.a, -self.b)


DEFAULT_PSI_TESTS = (
    SchwartzTest(1.0, 0.3),
    SchwartzTest(1.0, -0.4),
    SchwartzTest(0.5, 0.6),
    SchwartzTest(2.0, 0.2),
    SchwartzTest(1.5, -0.25),
)


def pair_psi_weak(
    fam: ContinuumFamily,
    E: complex,
    test: SchwartzTest,
    n_sub: int,
    check_pole: bool = True,
) -> complex:
    """Regularized pairing integral test(u) * psi^E(u) du.

    The complex power u^lam is not locally integrable near Re(lam) <= -1, so
    the [0, 1] piece subtracts the first n_sub+1 Taylor terms of the test and
    restores them as the explicit meromorphic sum
    sum_k test^(k)(0) / (k! (lam + k + 1)), which carries the poles.
    """
    if fam.representation != "uv":
        raise ConfigurationError("pair_psi_weak expects a psi family")
    if n_sub < 0:
        raise ConfigurationError("n_sub must be >= 0")
    if check_pole:
        _guard_pole(fam, complex(E))
    lam = _nu(complex(E), fam.gamma)
    work = test if fam.family == "psi_plus" else test.reflected()
    derivs = [work.derivative_at_zero(k) for k in range(n_sub + 1)]
    inv_fact = np.exp(-np.asarray([log_factorial(k) for k in range(n_sub + 1)]))

    def taylor(u: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(u)
        for k in range(n_sub + 1):
            acc = acc + derivs[k] * inv_fact[k] * u**k
        return acc

    total = 0.0 + 0.0j
    # dyadic panels toward 0 keep the u^{lam+n_sub+1} endpoint behavior resolved;
    # below 0.25 the subtracted remainder cancels to rounding noise that the
    # u^lam weight then amplifies, so the explicit series tail is used instead
    edges = [1.0 / 2.0**m for m in range(41)]
    for hi, lo in zip(edges[:-1], edges[1:]):
        nodes, weights = gauss_legendre_panels(lo, hi, hi - lo, order=24)
        if hi <= 0.25:
            rem = work.taylor_remainder(nodes, n_sub)
        else:
            rem = work(nodes) - taylor(nodes)
        vals = rem * np.exp(lam * np.log(nodes))
        total += complex(np.sum(weights * vals))
    upper = work.b + math.sqrt(42.0 / work.a)
    if upper > 1.0:
        nodes, weights = gauss_legendre_panels(1.0, upper, 0.5, order=24)
        total += complex(np.sum(weights * work(nodes) * np.exp(lam * np.log(nodes))))
    for k in range(n_sub + 1):
        total += derivs[k] * inv_fact[k] / (lam + k + 1.0)
    return total / math.sqrt(2.0 * math.pi * fam.gamma)


def residue_psi_weak(
    fam: ContinuumFamily,
    n: int,
    tests: tuple[SchwartzTest, ...] = DEFAULT_PSI_TESTS,
    delta: float | None = None,
) -> ResidueEstimate:
    """Weak-sense residue of a psi family at -E_n against Schwartz tests.

    Reference: the residue is (+/-1)^n i sqrt(g)/sqrt(2 pi n!) times the n-th
    delta-derivative resonance, whose pairing with a test is
    test^(n)(0)/sqrt(n!); the minus family picks up the (-1)^n mirror parity.
    """
    if fam.representation != "uv":
        raise ConfigurationError("residue_psi_weak expects a psi family")
    if delta is None:
        delta = DEFAULT_RESIDUE_DELTA_FACTOR * fam.gamma
    pole = complex(pole_lattice(fam, n)[n])
    sign = 1.0 if fam.family == "psi_plus" else (-1.0) ** n
    estimates = []
    references = []
    for test in tests:
        acc = 0.0 + 0.0j
        for theta in _CIRCLE_ANGLES:
            offset = delta * np.exp(1j * theta)
            acc += offset * pair_psi_weak(fam, pole + offset, test, n_sub=n + 2, check_pole=False)
        estimates.append(acc / len(_CIRCLE_ANGLES))
        scalar = sign * 1j * math.sqrt(fam.gamma) * math.exp(-0.5 * math.log(2.0 * math.pi) - float(log_factorial(n)))
        references.append(scalar * test.derivative_at_zero(n))
    estimate = np.asarray(estimates, dtype=np.complex128)
    reference = np.asarray(references, dtype=np.complex128)
    mask = np.abs(reference) > 1e-12
    if not np.any(mask):
        raise AccuracyError("all weak references vanish; choose off-center tests")
    rel = np.abs(estimate[mask] - reference[mask]) / np.abs(reference[mask])
    return ResidueEstimate(
        n=n,
        pole=pole,
        estimate=estimate,
        reference=reference,
        max_rel_error=float(np.max(rel)),
    )


def detect_poles(fam: ContinuumFamily, n_max: int = 10) -> np.ndarray:
    """Locate the family's poles by minimizing 1/|field| along its half-axis.

    Returns the detected complex positions, one per n <= n_max.  The search
    is a golden-section refinement of 1/|F(i s)| inside each unit cell around
    s = g(n+1/2); evaluation bypasses the proximity guard (values near the
    pole are large but finite).
    """
    gamma = fam.gamma
    s_axis = fam.pole_half_axis
    if fam.representation == "xp":
        x_probe = np.asarray([0.7 / math.sqrt(gamma)])

        def magnitude(s: float) -> float:
            val = eval_family(fam, 1j * s_axis * s, x_probe, check_pole=False)
            return float(np.abs(val[0]))

    else:
        test = SchwartzTest(1.0, 0.3)

        def magnitude(s: float) -> float:
            val = pair_psi_weak(fam, 1j * s_axis * s, test, n_sub=n_max + 2, check_pole=False)
            return float(abs(val))

    found = []
    for n in range(n_max + 1):
        center = gamma * (n + 0.5)
        lo = center - 0.45 * gamma
        hi = center + 0.45 * gamma
        inv = lambda s: 1.0 / max(magnitude(s), 1e-300)
        # bisection-style golden refinement of the reciprocal dip
        a, b = lo, hi
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = inv(c), inv(d)
        while (b - a) > 1e-9 * gamma:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = inv(c)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = inv(d)
        found.append(1j * s_axis * 0.5 * (a + b))
    return np.asarray(found, dtype=np.complex128)


def chi_profile_oscillatory(E: float, x: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    """chi_plus^E on real points, generated from its second-order equation.

    The power-series route loses digits to cancellation once the series terms
    overshoot the O(1) oscillatory result, which rules it out on wide windows.
    At x = 0 the closed forms D_p(0) and D_p'(0) are cancellation-free, so the
    field is integrated outward from there: chi'' = -(g^2 x^2 + 2E) chi.
    """
    from scipy.integrate import solve_ivp

    if gamma <= 0:
        raise ConfigurationError("gamma must be positive")
    _guard_pole(ContinuumFamily("chi_plus", gamma), complex(E))
    nu = _nu(complex(E), gamma)
    p = -nu - 1.0
    # Gamma(nu+1) underflows for E/gamma beyond ~550 while the field stays
    # O(1); sum every log factor before the single exponentiation
    log_front = (
        -1j * math.pi / 8.0
        + 0.25 * math.log(gamma / (2.0 * math.pi**2))
        - 0.5 * math.log(2.0 * math.pi * gamma)
        + 1j * math.pi * (nu + 1.0) / 4.0
        + log_gamma(nu + 1.0)
    )
    scale = -math.sqrt(2.0 * gamma) * np.exp(-1j * math.pi / 4.0)
    half_log_pi = 0.5 * math.log(math.pi)
    log_d0 = half_log_pi + 0.5 * p * math.log(2.0) - log_gamma(0.5 * (1.0 - p))
    log_d0p = half_log_pi + 0.5 * (p + 1.0) * math.log(2.0) - log_gamma(-0.5 * p)
    y0 = np.array(
        [np.exp(log_front + log_d0), -scale * np.exp(log_front + log_d0p)],
        dtype=np.complex128,
    )

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], -(gamma**2 * t**2 + 2.0 * E) * y[0]])

    xx = np.asarray(x, dtype=np.float64)
    out = np.empty(xx.shape, dtype=np.complex128)
    for side in (xx >= 0.0, xx < 0.0):
        pts = xx[side]
        if pts.size == 0:
            continue
        extreme = float(pts[np.argmax(np.abs(pts))])
        if extreme == 0.0:
            out[side] = y0[0]
            continue
        order = np.argsort(np.abs(pts))
        sol = solve_ivp(
            rhs,
            (0.0, extreme),
            y0,
            t_eval=pts[order],
            method="DOP853",
            rtol=1e-11,
            atol=1e-13,
        )
        if not sol.success:
            raise AccuracyError("oscillatory profile integration failed", detail=sol.message)
        vals = np.empty(pts.size, dtype=np.complex128)
        vals[order] = sol.y[0]
        out[side] = vals
    return out


def orthonormality_check_chi(
    E1: float,
    E2: float,
    window: Grid,
    taper_width: float,
    gamma: float = 1.0,
) -> complex:
    """Windowed, tapered overlap sum of the two chi branches at E1 vs E2.

    The continuum normalization is delta(E - E'); only window-decay behavior
    is a number, so this returns the tapered quadrature value for the caller
    to compare across window sizes.  Real energies and possibly wide windows:
    the fields come from the oscillatory-regime route.
    """
    if taper_width <= 0 or taper_width > (window.u_max - window.u_min) / 2.0:
        raise ConfigurationError("taper width must be positive and fit the window")
    x = window.points()
    taper = _cosine_taper(x, window, taper_width)
    w = _trapezoid_weights(window)
    a = chi_profile_oscillatory(E1, x, gamma)
    b = chi_profile_oscillatory(E2, x, gamma) if E2 != E1 else a
    plus = np.sum(w * taper * np.conj(a) * b)
    minus = np.sum(w * taper * np.conj(a[::-1]) * b[::-1])
    return complex(plus + minus)


def orthonormality_control_plane_waves(
    k1: float, k2: float, window: Grid, taper_width: float
) -> complex:
    """Same windowed overlap for (2 pi)^{-1/2} e^{ikx}: the analytic control."""
    if taper_width <= 0 or taper_width > (window.u_max - window.u_min) / 2.0:
        raise ConfigurationError("taper width must be positive and fit the window")
    x = window.points()
    taper = _cosine_taper(x, window, taper_width)
    w = _trapezoid_weights(window)
    integrand = np.exp(1j * (k2 - k1) * x) / (2.0 * math.pi)
    return complex(np.sum(w * taper * integrand))


def _cosine_taper(x: np.ndarray, window: Grid, width: float) -> np.ndarray:
    out = np.ones_like(x)
    left = x < window.u_min + width
    right = x > window.u_max - width
    out[left] = 0.5 * (1.0 - np.cos(math.pi * (x[left] - window.u_min) / width))
    out[right] = 0.5 * (1.0 - np.cos(math.pi * (window.u_max - x[right]) / width))
    return out


def _trapezoid_weights(grid: Grid) -> np.ndarray:
    w = np.full(grid.n_points, grid.spacing)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w
