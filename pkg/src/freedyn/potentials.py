"""Coefficient functions and the four-channel potential decomposition.

A potential is V(x) = f1(x)*I + f2(x)*sigma_z + f3(x)*sigma_y + f4(x)*sigma_x.
Each channel is a Coefficient: a named analytic form with parameters, or a
table of node values.  Named forms are what the transform compiler can
antidifferentiate in closed form; tables fall back to the trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z
from .errors import GridMismatch, UnsupportedPotential
from .lattice import Grid1D

# Tolerance for "is this coefficient real/zero" decisions, relative to its scale.
_REAL_TOL = 1e-12


@dataclass(frozen=True)
class Coefficient:
    """One scalar coefficient function of x.

    kind is one of zero | constant | linear | quadratic | cosine | sine |
    tabulated.  amplitude multiplies the base shape (x, x^2, cos(freq x), ...)
    and may be complex; frequency is used by cosine/sine only.
    """

    kind: str
    amplitude: complex = 0.0
    frequency: float = 0.0
    table: np.ndarray | None = None

    @classmethod
    def zero(cls) -> "Coefficient":
        return cls("zero")

    @classmethod
    def constant(cls, c) -> "Coefficient":
        return cls("constant", complex(c))

    @classmethod
    def linear(cls, g) -> "Coefficient":
        return cls("linear", complex(g))

    @classmethod
    def quadratic(cls, a) -> "Coefficient":
        return cls("quadratic", complex(a))

    @classmethod
    def cosine(cls, g, frequency) -> "Coefficient":
        return cls("cosine", complex(g), float(frequency))

    @classmethod
    def sine(cls, g, frequency) -> "Coefficient":
        return cls("sine", complex(g), float(frequency))

    @classmethod
    def tabulated(cls, values) -> "Coefficient":
        return cls("tabulated", table=np.asarray(values, dtype=np.complex128))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Complex values at positions x (any positions for analytic kinds)."""
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "zero":
            return np.zeros_like(x, dtype=np.complex128)
        if self.kind == "constant":
            return np.full_like(x, self.amplitude, dtype=np.complex128)
        if self.kind == "linear":
            return self.amplitude * x
        if self.kind == "quadratic":
            return self.amplitude * x * x
        if self.kind == "cosine":
            return self.amplitude * np.cos(self.frequency * x)
        if self.kind == "sine":
            return self.amplitude * np.sin(self.frequency * x)
        if self.kind == "tabulated":
            if self.table is None or len(self.table) != len(x):
                raise GridMismatch(
                    "tabulated coefficient has a different length than the grid"
                )
            return self.table.astype(np.complex128)
        raise ValueError(f"unknown coefficient kind {self.kind!r}")

    def scaled(self, factor: complex) -> "Coefficient":
        if self.kind == "zero":
            return self
        if self.kind == "tabulated":
            return Coefficient.tabulated(self.table * factor)
        return Coefficient(self.kind, self.amplitude * factor, self.frequency)

    @property
    def scale(self) -> float:
        if self.kind == "tabulated":
            return float(np.max(np.abs(self.table))) if len(self.table) else 0.0
        return abs(self.amplitude)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or self.scale == 0.0

    @property
    def is_real(self) -> bool:
        if self.kind == "tabulated":
            return bool(np.max(np.abs(self.table.imag), initial=0.0)
                        <= _REAL_TOL * max(1.0, self.scale))
        return abs(complex(self.amplitude).imag) <= _REAL_TOL * max(1.0, self.scale)

    @property
    def is_imaginary(self) -> bool:
        if self.kind == "tabulated":
            return bool(np.max(np.abs(self.table.real), initial=0.0)
                        <= _REAL_TOL * max(1.0, self.scale))
        return abs(complex(self.amplitude).real) <= _REAL_TOL * max(1.0, self.scale)

    def to_config(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "tabulated":
            raise UnsupportedPotential("tabulated coefficients do not round-trip through config text")
        if self.kind != "zero":
            out["amplitude"] = _complex_str(self.amplitude)
        if self.kind in ("cosine", "sine"):
            out["frequency"] = repr(self.frequency)
        return out

    @classmethod
    def from_config(cls, cfg: dict) -> "Coefficient":
        kind = cfg["kind"]
        amp = complex(cfg.get("amplitude", 0))
        freq = float(cfg.get("frequency", 0.0))
        return cls(kind, amp, freq)


def _complex_str(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    return repr(z)


def antiderivative_coefficient(f: Coefficient, grid: Grid1D | None = None) -> Coefficient:
    """F with F' = f.  Closed form for named kinds, trapezoid for tables.

    Closed forms keep the natural constant (g x -> g x^2 / 2,
    g cos(lx) -> (g/l) sin(lx)); tabulated antiderivatives are gauged to
    F(x_min) = 0 by the cumulative trapezoid rule on the grid.
    """
    if f.kind == "zero":
        return Coefficient.zero()
    if f.kind == "constant":
        return Coefficient.linear(f.amplitude)
    if f.kind == "linear":
        return Coefficient.quadratic(f.amplitude / 2.0)
    if f.kind == "cosine":
        if f.frequency == 0.0:
            return Coefficient.linear(f.amplitude)
        return Coefficient.sine(f.amplitude / f.frequency, f.frequency)
    if f.kind == "tabulated":
        if grid is None:
            raise UnsupportedPotential("tabulated antiderivative needs a grid")
        vals = f.evaluate(grid.x)
        out = np.empty_like(vals)
        out[0] = 0.0
        out[1:] = np.cumsum(0.5 * (vals[1:] + vals[:-1])) * grid.dx
        return Coefficient.tabulated(out)
    raise UnsupportedPotential(f"no closed-form antiderivative for kind {f.kind!r}")


@dataclass(frozen=True)
class PotentialSpec:
    """Static potential with channels (f1, f2, f3, f4) on (I, sz, sy, sx)."""

    f1: Coefficient = Coefficient.zero()
    f2: Coefficient = Coefficient.zero()
    f3: Coefficient = Coefficient.zero()
    f4: Coefficient = Coefficient.zero()

    @classmethod
    def scalar(cls, f: Coefficient) -> "PotentialSpec":
        return cls(f1=f)

    @classmethod
    def sigma_z(cls, f: Coefficient) -> "PotentialSpec":
        return cls(f2=f)

    @classmethod
    def sigma_y(cls, f: Coefficient) -> "PotentialSpec":
        return cls(f3=f)

    @classmethod
    def sigma_x(cls, f: Coefficient) -> "PotentialSpec":
        return cls(f4=f)

    @property
    def channels(self) -> tuple[Coefficient, Coefficient, Coefficient, Coefficient]:
        return (self.f1, self.f2, self.f3, self.f4)

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for f in self.channels)

    @property
    def is_hermitian(self) -> bool:
        return all(f.is_real for f in self.channels)

    def matrices(self, grid: Grid1D) -> np.ndarray:
        """(n_points, 2, 2) complex matrix of V at every node."""
        v1, v2, v3, v4 = (f.evaluate(grid.x) for f in self.channels)
        out = (v1[:, None, None] * ID2 + v2[:, None, None] * SIGMA_Z
               + v3[:, None, None] * SIGMA_Y + v4[:, None, None] * SIGMA_X)
        return out
