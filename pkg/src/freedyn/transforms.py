"""Static pointwise transforms that trade a supported potential for free evolution.

A transform is psi(x, t) = U(x) phi(x, t) with
U(x) = exp(-i F1 sigma_x - i F2 sigma_y - i F3 sigma_z - i F4), all exponents
sharing a single Pauli direction plus the identity so they commute.  The
defining relation is

    i sigma_x U'(x) = V(x) U(x),

which removes V from the equation of motion.  Whether the remaining equation
is exactly free (scalar U, or the Majorana conjugation conditions hold) or
free only where the exponent is small is recorded in TransformSpec.exactness.

compile_transform knows five target kinds and rejects everything else with the
violated condition spelled out; the rejections are as load-bearing as the
acceptances (a linear scalar potential compiles for the Majorana equation and
must not compile for the exact Dirac route).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import BETA12, ID2, ID4, SIGMA_X, SIGMA_Y, SIGMA_Z, pauli_exp
from .errors import (
    GridMismatch,
    NonInvertible,
    PreconditionViolated,
    UnsupportedPotential,
)
from .lattice import Grid1D, RealField, norm
from .potentials import Coefficient, PotentialSpec, antiderivative_coefficient

EQUATION_KINDS = (
    "majorana",
    "dirac_exact",
    "dirac_approx",
    "massless_mass",
    "two_body_majorana",
)

# Default |F2| (or two-body |exponent|) bound inside which an approximate
# transform's free evolution is trusted for reporting.
DEFAULT_WINDOW_HINT = 0.2

_DET_FLOOR = 1e-300


def antiderivative(f: Coefficient, grid: Grid1D | None = None) -> Coefficient:
    """F with F' = f; closed form for named kinds, trapezoid gauge F(x_min)=0 for tables."""
    return antiderivative_coefficient(f, grid)


@dataclass(frozen=True)
class TransformSpec:
    """Compiled exponents of a static transform plus its validity bookkeeping."""

    F1: Coefficient
    F2: Coefficient
    F3: Coefficient
    F4: Coefficient
    equation_kind: str
    exactness: str  # "exact" | "approximate"
    window_hint: float | None = None
    two_body_exponent: Coefficient | None = None

    def __post_init__(self):
        if self.equation_kind not in EQUATION_KINDS:
            raise ValueError(f"unknown equation kind {self.equation_kind!r}")
        if self.exactness not in ("exact", "approximate"):
            raise ValueError(f"exactness must be exact|approximate, got {self.exactness!r}")
        if self.equation_kind == "majorana":
            if not (self.F2.is_zero and self.F3.is_zero):
                raise PreconditionViolated("majorana transforms need F2 = F3 = 0")
            if not self.F1.is_real:
                raise PreconditionViolated("majorana transforms need a real F1")
            if not (self.F4.is_zero or self.F4.is_imaginary):
                raise PreconditionViolated("majorana transforms need a purely imaginary F4")
        if self.equation_kind == "dirac_exact":
            if not (self.F1.is_zero and self.F2.is_zero and self.F3.is_zero):
                raise PreconditionViolated("dirac_exact transforms are scalar: F1 = F2 = F3 = 0")
        if self.equation_kind in ("dirac_approx", "massless_mass"):
            if not (self.F1.is_zero and self.F3.is_zero):
                raise PreconditionViolated("this kind allows only F2 and F4")
        if self.equation_kind == "two_body_majorana" and self.two_body_exponent is None:
            raise PreconditionViolated("two_body_majorana needs its exponent coefficient")

    def to_config(self) -> dict:
        out = {
            "equation_kind": self.equation_kind,
            "exactness": self.exactness,
        }
        if self.window_hint is not None:
            out["window_hint"] = repr(self.window_hint)
        for name in ("F1", "F2", "F3", "F4"):
            out[name] = getattr(self, name).to_config()
        if self.two_body_exponent is not None:
            out["two_body_exponent"] = self.two_body_exponent.to_config()
        return out

    @classmethod
    def from_config(cls, cfg: dict) -> "TransformSpec":
        hint = cfg.get("window_hint")
        return cls(
            F1=Coefficient.from_config(cfg["F1"]),
            F2=Coefficient.from_config(cfg["F2"]),
            F3=Coefficient.from_config(cfg["F3"]),
            F4=Coefficient.from_config(cfg["F4"]),
            equation_kind=cfg["equation_kind"],
            exactness=cfg["exactness"],
            window_hint=float(hint) if hint is not None else None,
            two_body_exponent=(
                Coefficient.from_config(cfg["two_body_exponent"])
                if "two_body_exponent" in cfg else None
            ),
        )


@dataclass
class TransformField:
    """U evaluated on a grid: matrices[j] multiplies the spinor at node j."""

    grid: Grid1D
    matrices: np.ndarray  # (n_points, d, d) complex
    is_unitary: bool
    is_pure_phase: bool
    det_floor: float


def _require_zero(f: Coefficient, name: str, kind: str):
    if not f.is_zero:
        raise UnsupportedPotential(f"{kind} requires {name} = 0, got {f.kind}")


def compile_transform(
    potential: PotentialSpec | None,
    equation_kind: str,
    mass: float = 0.0,
    omega: float = 0.0,
    grid: Grid1D | None = None,
) -> TransformSpec:
    """Derive the transform exponents that eliminate `potential` for one equation kind.

    grid is only needed when a channel is tabulated (trapezoid antiderivative).
    Raises UnsupportedPotential naming the violated condition when the requested
    route cannot absorb the potential.
    """
    if equation_kind not in EQUATION_KINDS:
        raise ValueError(f"unknown equation kind {equation_kind!r}")
    zero = Coefficient.zero()

    if equation_kind == "two_body_majorana":
        if potential is not None and not potential.is_zero:
            raise UnsupportedPotential(
                "two_body_majorana takes no potential channels; the oscillator "
                "coupling enters through mass and omega"
            )
        if mass < 0 or omega < 0:
            raise UnsupportedPotential("two_body_majorana needs mass >= 0 and omega >= 0")
        return TransformSpec(
            F1=zero, F2=zero, F3=zero, F4=zero,
            equation_kind=equation_kind,
            exactness="approximate",
            window_hint=DEFAULT_WINDOW_HINT,
            two_body_exponent=Coefficient.quadratic(mass * omega / 2.0),
        )

    if potential is None:
        potential = PotentialSpec()
    f1, f2, f3, f4 = potential.channels

    if equation_kind == "majorana":
        _require_zero(f2, "f2", "majorana")
        _require_zero(f3, "f3", "majorana")
        if not f1.is_real:
            raise UnsupportedPotential("majorana requires a real f1 (F1 must stay real)")
        if not (f4.is_zero or f4.is_imaginary):
            raise UnsupportedPotential(
                "majorana requires a purely imaginary f4 (F4 must stay imaginary)"
            )
        return TransformSpec(
            F1=antiderivative_coefficient(f1, grid),
            F2=zero, F3=zero,
            F4=antiderivative_coefficient(f4, grid),
            equation_kind=equation_kind,
            exactness="exact",
        )

    if equation_kind == "dirac_exact":
        _require_zero(f1, "f1", "dirac_exact")
        _require_zero(f2, "f2", "dirac_exact")
        _require_zero(f3, "f3", "dirac_exact")
        return TransformSpec(
            F1=zero, F2=zero, F3=zero,
            F4=antiderivative_coefficient(f4, grid),
            equation_kind=equation_kind,
            exactness="exact",
        )

    if equation_kind == "dirac_approx":
        _require_zero(f1, "f1", "dirac_approx")
        _require_zero(f3, "f3", "dirac_approx")
        if not f2.is_real or not f4.is_real:
            raise UnsupportedPotential("dirac_approx requires real f2 and f4")
        return TransformSpec(
            F1=zero,
            F2=antiderivative_coefficient(f2, grid).scaled(-1j),
            F3=zero,
            F4=antiderivative_coefficient(f4, grid),
            equation_kind=equation_kind,
            exactness="approximate",
            window_hint=DEFAULT_WINDOW_HINT,
        )

    # massless_mass: a constant sigma_z channel acts as a mass for the massless
    # equation, traded for exp(-m x sigma_y) which is trustworthy near x = 0.
    if mass != 0.0:
        raise UnsupportedPotential("massless_mass applies to the massless equation only")
    _require_zero(f1, "f1", "massless_mass")
    _require_zero(f3, "f3", "massless_mass")
    _require_zero(f4, "f4", "massless_mass")
    if f2.kind != "constant" or not f2.is_real:
        raise UnsupportedPotential("massless_mass requires f2 = constant real mass")
    return TransformSpec(
        F1=zero,
        F2=Coefficient.linear(-1j * f2.amplitude),
        F3=zero,
        F4=zero,
        equation_kind="massless_mass",
        exactness="approximate",
        window_hint=DEFAULT_WINDOW_HINT,
    )


def _coeff_real_on(f: Coefficient, x: np.ndarray) -> bool:
    vals = f.evaluate(x)
    scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
    return float(np.max(np.abs(vals.imag), initial=0.0)) <= 1e-12 * scale


def build_transform_field(spec: TransformSpec, grid: Grid1D) -> TransformField:
    """Evaluate U on the grid nodes and classify it (unitary / pure phase)."""
    if spec.equation_kind == "two_body_majorana":
        a = spec.two_body_exponent.evaluate(grid.x)
        if np.max(np.abs(a.imag), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(a))):
            raise PreconditionViolated("two-body exponent must be real")
        mats = scipy.linalg.expm(-a.real[:, None, None] * BETA12[None, :, :])
        mats = mats.astype(np.complex128)
        identity = bool(np.max(np.abs(a)) == 0.0)
        dets = np.abs(np.linalg.det(mats))
        if np.min(dets) < _DET_FLOOR:
            raise NonInvertible("transform matrix determinant underflowed")
        return TransformField(grid, mats, is_unitary=identity,
                              is_pure_phase=identity, det_floor=float(np.min(dets)))

    v1 = spec.F1.evaluate(grid.x)
    v2 = spec.F2.evaluate(grid.x)
    v3 = spec.F3.evaluate(grid.x)
    v4 = spec.F4.evaluate(grid.x)
    mats = pauli_exp(v4, v1, v2, v3)
    pauli_zero = all(f.is_zero for f in (spec.F1, spec.F2, spec.F3))
    f4_real = _coeff_real_on(spec.F4, grid.x)
    is_pure_phase = pauli_zero and f4_real
    is_unitary = f4_real and all(
        f.is_zero or _coeff_real_on(f, grid.x) for f in (spec.F1, spec.F2, spec.F3)
    )
    dets = np.abs(np.linalg.det(mats))
    if np.min(dets) < _DET_FLOOR:
        raise NonInvertible("transform matrix determinant underflowed")
    return TransformField(grid, mats, is_unitary=is_unitary,
                          is_pure_phase=is_pure_phase, det_floor=float(np.min(dets)))


def apply_transform(field, tf: TransformField, direction: str = "forward"):
    """psi -> U psi (forward) or U^{-1} psi (inverse), node by node.

    Non-unitary transforms rescale the output back to unit norm; the scale that
    was divided out is returned alongside the field (1.0-ish for unitary U).
    Returns (new_field, scale).
    """
    if not field.grid.same_as(tf.grid):
        raise GridMismatch("field and transform live on different grids")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be forward|inverse, got {direction!r}")
    d = tf.matrices.shape[-1]
    if field.values.shape[0] != d:
        raise GridMismatch(
            f"transform acts on {d} components, field has {field.values.shape[0]}"
        )
    if direction == "forward":
        out = np.einsum("nij,jn->in", tf.matrices, field.values)
    else:
        out = np.linalg.solve(tf.matrices, field.values.T[:, :, None])[:, :, 0].T
    new = type(field)(field.grid, out)
    scale = norm(new)
    if not tf.is_unitary:
        if scale == 0.0:
            raise NonInvertible("transformed field vanished, cannot renormalize")
        new.values = new.values / scale
    return new, float(scale)


def density_relation_factor(spec: TransformSpec, grid: Grid1D) -> RealField:
    """Pointwise factor relating densities, |psi|^2 = factor * |phi|^2.

    Valid when the Pauli part of U is unitary (real F1/F2/F3); the factor is
    then exp(2 Im F4), which reduces to exp(-2i F4) for purely imaginary F4 and
    to 1 for real F4.  Mixed real-and-imaginary F4 is meaningful only for the
    scalar dirac_exact transforms.
    """
    if spec.equation_kind == "two_body_majorana":
        raise PreconditionViolated(
            "two-body transforms do not preserve the density pointwise"
        )
    for name in ("F1", "F2", "F3"):
        f = getattr(spec, name)
        if not (f.is_zero or _coeff_real_on(f, grid.x)):
            raise PreconditionViolated(
                f"{name} is not real: the transform distorts the density pointwise"
            )
    v4 = spec.F4.evaluate(grid.x)
    mixed = (np.max(np.abs(v4.real), initial=0.0) > 1e-12 * max(1.0, spec.F4.scale)
             and np.max(np.abs(v4.imag), initial=0.0) > 1e-12 * max(1.0, spec.F4.scale))
    if mixed and spec.equation_kind != "dirac_exact":
        raise PreconditionViolated(
            "F4 mixes real and imaginary parts; no closed-form factor for this kind"
        )
    return RealField(grid, np.exp(2.0 * v4.imag))


def _chebyshev_nodes_diff(n: int, a: float, b: float):
    """Chebyshev collocation nodes on [a, b] (descending) and the derivative matrix."""
    j = np.arange(n)
    xc = np.cos(np.pi * j / (n - 1))
    c = np.where((j == 0) | (j == n - 1), 2.0, 1.0) * (-1.0) ** j
    dx = xc[:, None] - xc[None, :] + np.eye(n)
    d = np.outer(c, 1.0 / c) / dx
    d -= np.diag(d.sum(axis=1))
    x = (a + b) / 2.0 + (b - a) / 2.0 * xc
    return x, d * (2.0 / (b - a))


def _matrices_at(spec: TransformSpec, x: np.ndarray) -> np.ndarray:
    if spec.equation_kind == "two_body_majorana":
        a = spec.two_body_exponent.evaluate(x).real
        return scipy.linalg.expm(-a[:, None, None] * BETA12[None, :, :]).astype(np.complex128)
    return pauli_exp(spec.F4.evaluate(x), spec.F1.evaluate(x),
                     spec.F2.evaluate(x), spec.F3.evaluate(x))


def elimination_residual(
    potential: PotentialSpec,
    spec: TransformSpec,
    domain_or_grid,
    n_nodes: int = 257,
    basis: str = "chebyshev",
) -> float:
    """Max-node norm of i sigma_x U'(x) - V(x) U(x) with a spectral derivative.

    basis="chebyshev" evaluates everything on Chebyshev collocation nodes over
    (x_min, x_max) and differentiates with the collocation matrix; this works
    for transforms that are smooth but not box-periodic (linear potentials,
    off-lattice constants).  basis="fourier" differentiates on the periodic
    grid by FFT and needs U to be box-periodic.  Both derivatives are
    independent of the compiler's antiderivative rules, so a wrong exponent
    shows up as an O(1) residual.
    """
    if spec.equation_kind == "two_body_majorana":
        raise PreconditionViolated(
            "the elimination relation is a 2x2 statement; two-body transforms "
            "cancel the oscillator term against dU/dx instead"
        )
    if basis == "chebyshev":
        if isinstance(domain_or_grid, Grid1D):
            a, b = domain_or_grid.x_min, domain_or_grid.x_max
        else:
            a, b = domain_or_grid
        x, dmat = _chebyshev_nodes_diff(n_nodes, a, b)
        u = _matrices_at(spec, x)
        du = np.einsum("mn,nij->mij", dmat, u)
        v1, v2, v3, v4 = (f.evaluate(x) for f in potential.channels)
    elif basis == "fourier":
        if not isinstance(domain_or_grid, Grid1D):
            raise PreconditionViolated("fourier residual needs a Grid1D")
        grid = domain_or_grid
        u = _matrices_at(spec, grid.x)
        spectra = np.fft.fft(u, axis=0)
        du = np.fft.ifft(1j * grid.k[:, None, None] * spectra, axis=0)
        v1, v2, v3, v4 = (f.evaluate(grid.x) for f in potential.channels)
    else:
        raise ValueError(f"basis must be chebyshev|fourier, got {basis!r}")

    vmat = (v1[:, None, None] * ID2 + v2[:, None, None] * SIGMA_Z
            + v3[:, None, None] * SIGMA_Y + v4[:, None, None] * SIGMA_X)
    resid = 1j * np.einsum("ij,njk->nik", SIGMA_X, du) - np.einsum("nij,njk->nik", vmat, u)
    return float(np.max(np.linalg.norm(resid, ord=2, axis=(1, 2))))


def free_equation_defect(spec: TransformSpec, grid: Grid1D) -> RealField:
    """Pointwise norm of the obstruction to the transformed equation being free.

    Pulling the kinetic term through U replaces U by sigma_x U sigma_x; for the
    two-body transform the anticommuting exponent flips sign, giving U^{-2}.
    The defect is |U^{-1} U_tilde - 1| per node: identically zero for exact
    kinds, O(2 |F2|) for the approximate ones, which is what the window hint
    thresholds.  Majorana kinds also fold in the conjugation condition
    conj(U) = sigma_y U_tilde sigma_y required by the antilinear mass term.
    """
    if spec.equation_kind == "two_body_majorana":
        a = spec.two_body_exponent.evaluate(grid.x).real
        u2 = scipy.linalg.expm(2.0 * a[:, None, None] * BETA12[None, :, :])
        defect = u2 - ID4[None, :, :]
        return RealField(grid, np.linalg.norm(defect, ord=2, axis=(1, 2)))
    u = _matrices_at(spec, grid.x)
    ut = np.einsum("ij,njk,kl->nil", SIGMA_X, u, SIGMA_X)
    kin = np.linalg.solve(u, ut) - ID2[None, :, :]
    defect = np.linalg.norm(kin, ord=2, axis=(1, 2))
    if spec.equation_kind == "majorana":
        conj_side = np.einsum("ij,njk,kl->nil", SIGMA_Y, ut, SIGMA_Y)
        mass = np.linalg.norm(np.conj(u) - conj_side, ord=2, axis=(1, 2))
        defect = np.maximum(defect, mass)
    return RealField(grid, defect)
