"""Periodic 1D grids, spinor fields and the metrics used everywhere else.

Conventions: a grid covers [x_min, x_max) with n_points equidistant nodes and
periodic wrap, so dx = (x_max - x_min) / n_points and the momentum lattice is
the usual FFT one.  Field values are stored components-first with shape
(n_components, n_points).  All norms are plain Riemann sums, norm(f) =
sqrt(dx * sum |f|^2), with no trapezoid end corrections (the wrap makes the
Riemann sum the trapezoid rule anyway).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInterval, GridMismatch, PreconditionViolated, ZeroSpinor


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_points: int
    dx: float
    x: np.ndarray = field(repr=False, compare=False)
    k: np.ndarray = field(repr=False, compare=False)

    def same_as(self, other: "Grid1D") -> bool:
        return (
            self.n_points == other.n_points
            and self.x_min == other.x_min
            and self.x_max == other.x_max
        )


def make_grid(x_min: float, x_max: float, n_points: int) -> Grid1D:
    """Build a periodic grid over [x_min, x_max) with a power-of-two node count."""
    if not x_max > x_min:
        raise DegenerateInterval(f"need x_max > x_min, got [{x_min}, {x_max}]")
    if n_points < 4 or (n_points & (n_points - 1)) != 0:
        raise ValueError(f"n_points must be a power of two >= 4, got {n_points}")
    dx = (x_max - x_min) / n_points
    x = x_min + dx * np.arange(n_points)
    k = 2.0 * np.pi * np.fft.fftfreq(n_points, d=dx)
    return Grid1D(x_min, x_max, n_points, dx, x, k)


def _check_values(values: np.ndarray, n_components: int, grid: Grid1D) -> np.ndarray:
    values = np.asarray(values)
    if values.shape != (n_components, grid.n_points):
        raise ValueError(
            f"expected shape {(n_components, grid.n_points)}, got {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise ValueError("field contains non-finite entries")
    return values


@dataclass
class SpinorField:
    """Two-component complex field; values[c, j] is component c at node j."""

    grid: Grid1D
    values: np.ndarray

    n_components = 2

    def __post_init__(self):
        self.values = _check_values(np.asarray(self.values, dtype=np.complex128), 2, self.grid)


@dataclass
class TwoBodyField:
    """Four-component complex field over the relative coordinate."""

    grid: Grid1D
    values: np.ndarray

    n_components = 4

    def __post_init__(self):
        self.values = _check_values(np.asarray(self.values, dtype=np.complex128), 4, self.grid)


@dataclass
class RealField:
    """Single real-valued field, e.g. a density or a density-relation factor."""

    grid: Grid1D
    values: np.ndarray

    n_components = 1

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        self.values = _check_values(vals.reshape(1, -1), 1, self.grid)[0]


def gaussian_packet(grid: Grid1D, x0: float, sigma: float, k0: float, weights) -> SpinorField | TwoBodyField:
    """Normalized Gaussian wave packet N * w * exp(-(x-x0)^2/(4 sigma^2) + i k0 x).

    len(weights) selects the field type: 2 -> SpinorField, 4 -> TwoBodyField.
    The grid sum of the density is exactly 1.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    w = np.asarray(weights, dtype=np.complex128)
    if w.ndim != 1 or len(w) not in (2, 4):
        raise ValueError("weights must be a 2- or 4-vector")
    if np.all(w == 0):
        raise ZeroSpinor("all spinor weights vanish")
    envelope = np.exp(-((grid.x - x0) ** 2) / (4.0 * sigma**2) + 1j * k0 * grid.x)
    values = w[:, None] * envelope[None, :]
    values /= np.sqrt(grid.dx * np.sum(np.abs(values) ** 2))
    cls = SpinorField if len(w) == 2 else TwoBodyField
    return cls(grid, values)


def density(psi) -> RealField:
    """Pointwise probability density, sum over components of |psi_c|^2."""
    return RealField(psi.grid, np.sum(np.abs(psi.values) ** 2, axis=0))


def norm(psi) -> float:
    """sqrt(dx * sum |values|^2) over all components and nodes."""
    return float(np.sqrt(psi.grid.dx * np.sum(np.abs(psi.values) ** 2)))


def position_expectation(psi) -> float:
    """<x> of the (not necessarily normalized) density."""
    rho = np.sum(np.abs(psi.values) ** 2, axis=0)
    total = np.sum(rho)
    if total == 0:
        raise PreconditionViolated("cannot take <x> of an identically zero field")
    return float(np.sum(psi.grid.x * rho) / total)


def window_mask(grid: Grid1D, window: tuple[float, float] | None) -> np.ndarray:
    if window is None:
        return np.ones(grid.n_points, dtype=bool)
    lo, hi = window
    if lo >= hi:
        raise PreconditionViolated(f"empty window [{lo}, {hi}]")
    if lo < grid.x_min - grid.dx or hi > grid.x_max + grid.dx:
        raise PreconditionViolated(
            f"window [{lo}, {hi}] exceeds the grid domain [{grid.x_min}, {grid.x_max}]"
        )
    return (grid.x >= lo) & (grid.x <= hi)


def l2_density_error(a: RealField, b: RealField, window: tuple[float, float] | None = None) -> float:
    """Relative L2 error sqrt(int_w (a-b)^2) / sqrt(int_w a^2), w = window or full box."""
    if not a.grid.same_as(b.grid):
        raise GridMismatch("density fields live on different grids")
    mask = window_mask(a.grid, window)
    num = np.sqrt(a.grid.dx * np.sum((a.values[mask] - b.values[mask]) ** 2))
    den = np.sqrt(a.grid.dx * np.sum(a.values[mask] ** 2))
    if den == 0.0:
        return 0.0 if num == 0.0 else np.inf
    return float(num / den)


def spectral_derivative(psi):
    """d/dx by FFT: multiply the spectrum by ik.  Exact for band-limited fields."""
    ik = 1j * psi.grid.k
    if isinstance(psi, RealField):
        out = np.fft.ifft(ik * np.fft.fft(psi.values)).real
        return RealField(psi.grid, out)
    out = np.fft.ifft(ik[None, :] * np.fft.fft(psi.values, axis=1), axis=1)
    return type(psi)(psi.grid, out)
