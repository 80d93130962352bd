"""Uniform grids, sampled states, and the quadrature/resampling primitives.

A :class:`Grid` is a closed interval sampled at ``n_points`` equispaced
abscissae.  A :class:`WaveFunction` is a complex-valued sample vector tied to
a grid and a representation tag (``"uv"`` for the damped-motion coordinate,
``"xp"`` for the oscillator coordinate).  Inner products use composite Simpson
quadrature, which fixes the grids to an odd number of points; resampling uses
a local four-point Lagrange cubic, which reproduces cubic polynomials exactly
and fills with zeros outside the source domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .errors import ConfigurationError, DataError, GridMismatchError

Representation = Literal["uv", "xp"]

_VALID_REPRESENTATIONS = ("uv", "xp")


@dataclass(frozen=True)
class Grid:
    """Uniform closed-interval grid."""

    u_min: float
    u_max: float
    n_points: int

    def __post_init__(self):
        if not (np.isfinite(self.u_min) and np.isfinite(self.u_max)):
            raise ConfigurationError("grid endpoints must be finite")
        if not self.u_max > self.u_min:
            raise ConfigurationError(
                f"grid needs u_max > u_min, got [{self.u_min}, {self.u_max}]"
            )
        if self.n_points < 2:
            raise ConfigurationError("grid needs at least 2 points")

    @property
    def spacing(self) -> float:
        return (self.u_max - self.u_min) / (self.n_points - 1)

    def point(self, k: int) -> float:
        # u_min + k*h, bit-reproducible for every index
        return self.u_min + k * self.spacing

    def points(self) -> np.ndarray:
        return self.u_min + self.spacing * np.arange(self.n_points)

    def index_of(self, u: float, tol: float = 1e-9) -> int:
        """Index of the grid point equal to ``u`` (within ``tol*spacing``)."""
        k = round((u - self.u_min) / self.spacing)
        if k < 0 or k >= self.n_points or abs(self.point(k) - u) > tol * self.spacing:
            raise ConfigurationError(f"u={u} is not a grid point")
        return int(k)


def make_grid(u_min: float, u_max: float, n_points: int) -> Grid:
    """Construction helper enforcing Simpson-compatible (odd) point counts."""
    if n_points % 2 == 0:
        raise ConfigurationError("n_points must be odd for Simpson quadrature")
    if n_points < 3:
        raise ConfigurationError("need n_points >= 3")
    return Grid(float(u_min), float(u_max), int(n_points))


DEFAULT_UV_GRID = make_grid(-20.0, 20.0, 4001)
DEFAULT_XP_GRID = make_grid(-10.0, 10.0, 2001)


@dataclass(frozen=True)
class WaveFunction:
    """Complex samples of a state on a grid, tagged with its representation."""

    grid: Grid
    samples: np.ndarray = field(repr=False)
    representation: Representation = "uv"

    def __post_init__(self):
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] != self.grid.n_points:
            raise GridMismatchError(
                f"samples shape {arr.shape} does not match grid "
                f"({self.grid.n_points} points)"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise DataError("samples contain NaN or Inf")
        if self.representation not in _VALID_REPRESENTATIONS:
            raise ConfigurationError(
                f"unknown representation {self.representation!r}"
            )
        object.__setattr__(self, "samples", arr)

    def with_samples(self, samples: np.ndarray) -> "WaveFunction":
        return WaveFunction(self.grid, samples, self.representation)


def sample(
    fn: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    representation: Representation = "uv",
) -> WaveFunction:
    """Sample a callable on the grid."""
    return WaveFunction(grid, np.asarray(fn(grid.points()), dtype=np.complex128),
                        representation)


def simpson_weights(grid: Grid) -> np.ndarray:
    """Composite Simpson weights; requires an odd number of points."""
    n = grid.n_points
    if n < 3 or n % 2 == 0:
        raise ConfigurationError(
            f"Simpson quadrature needs an odd point count >= 3, got {n}"
        )
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (grid.spacing / 3.0)


def _check_compatible(a: WaveFunction, b: WaveFunction) -> None:
    if a.grid != b.grid:
        raise GridMismatchError("states live on different grids")
    if a.representation != b.representation:
        raise GridMismatchError(
            f"representations differ: {a.representation} vs {b.representation}"
        )


def inner_product(a: WaveFunction, b: WaveFunction) -> complex:
    """<a|b> = integral of conj(a)*b, conjugate-linear in the first slot."""
    _check_compatible(a, b)
    w = simpson_weights(a.grid)
    return complex(np.sum(w * np.conj(a.samples) * b.samples))


def norm(a: WaveFunction) -> float:
    w = simpson_weights(a.grid)
    val = float(np.sum(w * np.abs(a.samples) ** 2))
    # tiny negative round-off is possible for the zero state
    return float(np.sqrt(max(val, 0.0)))


def resample(wf: WaveFunction, target: Grid) -> WaveFunction:
    """Local cubic interpolation of ``wf`` onto ``target``.

    Four-point Lagrange stencils (clamped at the edges) reproduce cubics
    exactly; target points outside the source interval get zero.
    """
    return WaveFunction(
        target,
        interpolate_values(wf.samples, wf.grid, target.points()),
        wf.representation,
    )


def interpolate_values(
    samples: np.ndarray, source: Grid, targets: np.ndarray
) -> np.ndarray:
    """Evaluate the local-quintic interpolant of ``samples`` at ``targets``."""
    y = np.asarray(samples, dtype=np.complex128)
    t = np.asarray(targets, dtype=np.float64)
    out = np.zeros(t.shape, dtype=np.complex128)
    h = source.spacing
    inside = (t >= source.u_min) & (t <= source.u_max)
    if not np.any(inside):
        return out
    pos = (t[inside] - source.u_min) / h
    # stencil j-2..j+3 around the containing cell, clamped to the interior
    j = np.clip(np.floor(pos).astype(np.int64), 2, source.n_points - 5)
    s = pos - j
    a = s + 2.0
    b = s + 1.0
    c = s - 1.0
    d = s - 2.0
    e = s - 3.0
    acc = -b * s * c * d * e / 120.0 * y[j - 2]
    acc += a * s * c * d * e / 24.0 * y[j - 1]
    acc += -a * b * c * d * e / 12.0 * y[j]
    acc += a * b * s * d * e / 12.0 * y[j + 1]
    acc += -a * b * s * c * e / 24.0 * y[j + 2]
    acc += a * b * s * c * d / 120.0 * y[j + 3]
    out[inside] = acc
    return out
