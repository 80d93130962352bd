"""Small numerical kernels shared across modules.

Finite-difference weights (Fornberg's algorithm), composite Gauss-Legendre
panels for chirped integrands, Neville extrapolation of a regulator ladder to
zero, and a golden-section scalar minimiser.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import SearchIntervalError


def fd_weights(deriv_order: int, offsets: np.ndarray) -> np.ndarray:
    """Finite-difference weights for the ``deriv_order``-th derivative at 0.

    ``offsets`` are the actual stencil abscissae (spacing included); the
    returned weights satisfy f^{(m)}(0) ~= sum(w * f(offsets)).  Classic
    Fornberg recursion.
    """
    x = np.asarray(offsets, dtype=np.float64)
    n = len(x)
    m = deriv_order
    if n <= m:
        raise ValueError("stencil too small for requested derivative order")
    c = np.zeros((n, m + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0]
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m].copy()


def central_stencil_offsets(deriv_order: int, accuracy: int, h: float) -> np.ndarray:
    """Symmetric stencil abscissae for an order-``accuracy`` central estimate."""
    half = (deriv_order + accuracy) // 2
    return h * np.arange(-half, half + 1, dtype=np.float64)


def gauss_legendre_panels(
    a: float, b: float, panel_len: float, order: int = 48
) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [a, b] in equal panels."""
    n_panels = max(1, int(np.ceil((b - a) / panel_len)))
    edges = np.linspace(a, b, n_panels + 1)
    xg, wg = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def neville_to_zero(
    xs: Sequence[float], ys: Sequence[np.ndarray | complex]
) -> tuple[np.ndarray | complex, float]:
    """Polynomial extrapolation of samples (xs, ys) to x = 0.

    Returns the extrapolated value and the magnitude of the final correction
    (a convergence indicator).
    """
    xs = np.asarray(xs, dtype=np.float64)
    tableau = [np.asarray(y, dtype=np.complex128) for y in ys]
    top_estimates = [tableau[0]]
    for j in range(1, len(tableau)):
        for i in range(len(tableau) - j):
            tableau[i] = tableau[i + 1] + (
                (tableau[i + 1] - tableau[i]) * xs[i + j] / (xs[i] - xs[i + j])
            )
        top_estimates.append(tableau[0])
    top = top_estimates[-1]
    if len(top_estimates) > 1:
        correction = float(np.max(np.abs(top - top_estimates[-2])))
    else:
        correction = 0.0
    return top, correction


def golden_section(
    fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6
) -> tuple[float, float]:
    """Golden-section minimum of a unimodal scalar function on [lo, hi].

    Raises SearchIntervalError when the minimum sits at an endpoint of the
    bracket (checked on a coarse scan first, so non-unimodal objectives are
    caught early).
    """
    scan = np.linspace(lo, hi, 17)
    vals = np.array([fn(s) for s in scan])
    k = int(np.argmin(vals))
    if k == 0 or k == len(scan) - 1:
        raise SearchIntervalError(
            f"minimum attained at bracket edge ({scan[k]:.6g}); widen [{lo}, {hi}]"
        )
    a, b = scan[k - 1], scan[k + 1]
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)
