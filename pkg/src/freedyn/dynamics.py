"""Split-step propagators for the 1D Dirac and Majorana equations.

Units with hbar = c = 1 throughout.  The equations integrated here are

    Dirac:     i dpsi/dt = -i sigma_x psi' + (sigma_z m + V(x)) psi
    Majorana:  i dpsi/dt = -i sigma_x psi' - i sigma_y m conj(psi) + V(x) psi

and their two-body oscillator versions over the relative coordinate
x = (x1 - x2)/sqrt(2),

    i dpsi/dt = -(i/sqrt 2)(a1 - a2)(psi' + m w x b12 psi) + (b1 + b2) m psi
    i dpsi/dt = -(i/sqrt 2)(a1 - a2)(psi' + m w x b12 psi) - i (bh1 + bh2) m conj(psi)

with a1 = sigma_x o 1, a2 = 1 o sigma_x, b1 = sigma_z o 1, b2 = 1 o sigma_z,
b12 = sigma_y o sigma_y, bh1 = sigma_y o 1, bh2 = 1 o sigma_y.

Scheme: Strang splitting, local(dt/2) -> kinetic(dt) -> local(dt/2).  The
kinetic factor is exact in momentum space; the local factor is a pointwise
matrix exponential, closed form for 2x2 and scaling-and-squaring for the
rest, precomputed once because every supported potential is static.  The
antilinear Majorana mass term is handled by propagating the local factor on
the real embedding (Re psi_1, Im psi_1, Re psi_2, Im psi_2, ...), where a
linear-plus-antilinear map is an ordinary real matrix.

Norms drift freely for non-Hermitian potentials; nothing here renormalizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import (
    ALPHA1,
    ALPHA2,
    BETA1,
    BETA1H,
    BETA2,
    BETA2H,
    BETA12,
    SIGMA_Y,
    deinterleave,
    interleave,
    pauli_exp,
    real_embedding_antilinear,
    real_embedding_linear,
    two_body_kinetic_exp,
)
from .lattice import Grid1D, SpinorField, TwoBodyField
from .potentials import Coefficient, PotentialSpec

__all__ = [
    "EvolutionConfig",
    "PotentialSpec",
    "Coefficient",
    "default_timestep",
    "free_dirac_step",
    "evolve_dirac",
    "evolve_majorana",
    "evolve_two_body_dirac",
    "evolve_two_body_majorana",
    "ALPHA1", "ALPHA2", "BETA1", "BETA2", "BETA12", "BETA1H", "BETA2H",
]

# Oscillator coupling direction: -(i/sqrt2)(a1-a2) b12 is Hermitian.
_OSC = -1j / np.sqrt(2.0) * (ALPHA1 - ALPHA2) @ BETA12


@dataclass(frozen=True)
class EvolutionConfig:
    """Step size, step count, recording cadence and the mass parameter.

    record_every = 0 records the final state only; otherwise it must divide
    n_steps and snapshots land at t = record_every*dt, 2*record_every*dt, ...
    Negative dt is allowed so a run can be stepped backwards.
    """

    dt: float
    n_steps: int
    record_every: int = 0
    mass: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.dt) or self.dt == 0.0:
            raise ValueError(f"dt must be finite and nonzero, got {self.dt}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.record_every < 0:
            raise ValueError("record_every must be >= 0")
        if self.record_every and self.n_steps % self.record_every != 0:
            raise ValueError(
                f"record_every = {self.record_every} does not divide n_steps = {self.n_steps}"
            )
        if self.mass < 0:
            raise ValueError(f"mass must be >= 0, got {self.mass}")


def default_timestep(grid: Grid1D, mass: float) -> float:
    """Conservative fallback dt for configs that do not pin one."""
    return 1e-3 * grid.dx / max(1.0, mass * grid.dx)


def _kinetic_apply(values: np.ndarray, kin_mats: np.ndarray) -> np.ndarray:
    spec = np.fft.fft(values, axis=1)
    spec = np.einsum("nij,jn->in", kin_mats, spec)
    return np.fft.ifft(spec, axis=1)


def _matrix_apply(mats: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.einsum("nij,jn->in", mats, values)


def _split_evolve(field, kin_mats, local_half, local_full, cfg: EvolutionConfig):
    """Run Strang blocks between snapshots; local_half/full act on (C, N) values."""
    grid = field.grid
    r = cfg.record_every if cfg.record_every else cfg.n_steps
    n_blocks = cfg.n_steps // r
    v = field.values.copy()
    out = []
    steps_done = 0
    for _ in range(n_blocks):
        v = local_half(v)
        for i in range(r):
            v = _kinetic_apply(v, kin_mats)
            if i < r - 1:
                v = local_full(v)
        v = local_half(v)
        steps_done += r
        out.append((steps_done * cfg.dt, type(field)(grid, v.copy())))
    return out


def free_dirac_step(field: SpinorField, cfg: EvolutionConfig) -> SpinorField:
    """One exact free-Dirac step of cfg.dt in momentum space.

    The multiplier is exp(-i (k sigma_x + m sigma_z) dt) =
    cos(w dt) I - i sin(w dt)(k sigma_x + m sigma_z)/w with w = sqrt(k^2+m^2),
    which degenerates to the identity at w = 0.
    """
    grid = field.grid
    kin = pauli_exp(0.0, grid.k * cfg.dt, 0.0, cfg.mass * cfg.dt)
    return SpinorField(grid, _kinetic_apply(field.values, kin))


def _dirac_local_mats(potential: PotentialSpec, grid: Grid1D, dt: float) -> np.ndarray:
    v1, v2, v3, v4 = (f.evaluate(grid.x) for f in potential.channels)
    return pauli_exp(v1 * dt, v4 * dt, v3 * dt, v2 * dt)


def evolve_dirac(field: SpinorField, potential: PotentialSpec | None,
                 cfg: EvolutionConfig):
    """Strang evolution of the Dirac equation under a static potential.

    Returns a list of (time, SpinorField) snapshots.  This propagator is the
    reference for every Dirac comparison; with potential None or all-zero the
    local factors are exact identities and the run degenerates to repeated
    free steps.
    """
    grid = field.grid
    if potential is None:
        potential = PotentialSpec()
    kin = pauli_exp(0.0, grid.k * cfg.dt, 0.0, cfg.mass * cfg.dt)
    half = _dirac_local_mats(potential, grid, cfg.dt / 2.0)
    full = _dirac_local_mats(potential, grid, cfg.dt)
    return _split_evolve(
        field, kin,
        lambda v: _matrix_apply(half, v),
        lambda v: _matrix_apply(full, v),
        cfg,
    )


def _majorana_local_generator(potential: PotentialSpec, grid: Grid1D,
                              mass: float) -> np.ndarray:
    """Real 4x4 generator per node for dpsi/dt = -iV psi - m sigma_y conj(psi)."""
    lin = real_embedding_linear(-1j * potential.matrices(grid))
    anti = real_embedding_antilinear(-mass * SIGMA_Y)
    return lin + anti[None, :, :]


def evolve_majorana(field: SpinorField, potential: PotentialSpec | None,
                    cfg: EvolutionConfig):
    """Strang evolution of the Majorana equation under a static potential.

    The kinetic factor is the massless Dirac one (the antilinear mass term is
    local and joins the potential in the real-embedded factor).  Returns
    (time, SpinorField) snapshots.
    """
    grid = field.grid
    if potential is None:
        potential = PotentialSpec()
    kin = pauli_exp(0.0, grid.k * cfg.dt, 0.0, 0.0)
    gen = _majorana_local_generator(potential, grid, cfg.mass)
    e_half = scipy.linalg.expm(gen * (cfg.dt / 2.0))
    e_full = scipy.linalg.expm(gen * cfg.dt)

    def apply_real(mats, v):
        return deinterleave(_matrix_apply(mats, interleave(v)))

    return _split_evolve(
        field, kin,
        lambda v: apply_real(e_half, v),
        lambda v: apply_real(e_full, v),
        cfg,
    )


def _two_body_kin(grid: Grid1D, dt: float) -> np.ndarray:
    return two_body_kinetic_exp(grid.k * dt / np.sqrt(2.0))


def evolve_two_body_dirac(field: TwoBodyField, cfg: EvolutionConfig,
                          omega: float = 0.0):
    """Two-body Dirac oscillator in the relative coordinate, Strang splitting.

    omega = 0 leaves the free two-body Dirac equation.  Returns
    (time, TwoBodyField) snapshots.
    """
    grid = field.grid
    m = cfg.mass
    kin = _two_body_kin(grid, cfg.dt)
    h_local = (m * omega * grid.x)[:, None, None] * _OSC[None, :, :] \
        + m * (BETA1 + BETA2)[None, :, :]
    e_half = scipy.linalg.expm(-1j * h_local * (cfg.dt / 2.0))
    e_full = scipy.linalg.expm(-1j * h_local * cfg.dt)
    return _split_evolve(
        field, kin,
        lambda v: _matrix_apply(e_half, v),
        lambda v: _matrix_apply(e_full, v),
        cfg,
    )


def evolve_two_body_majorana(field: TwoBodyField, cfg: EvolutionConfig,
                             omega: float = 0.0):
    """Two-body Majorana oscillator in the relative coordinate, Strang splitting.

    The oscillator term is complex linear, the mass term antilinear, so the
    local factor runs on the 8-component real embedding.  omega = 0 leaves the
    free two-body Majorana equation.  Returns (time, TwoBodyField) snapshots.
    """
    grid = field.grid
    m = cfg.mass
    kin = _two_body_kin(grid, cfg.dt)
    h_osc = (m * omega * grid.x)[:, None, None] * _OSC[None, :, :]
    gen = real_embedding_linear(-1j * h_osc) \
        + real_embedding_antilinear(-m * (BETA1H + BETA2H))[None, :, :]
    e_half = scipy.linalg.expm(gen * (cfg.dt / 2.0))
    e_full = scipy.linalg.expm(gen * cfg.dt)

    def apply_real(mats, v):
        return deinterleave(_matrix_apply(mats, interleave(v)))

    return _split_evolve(
        field, kin,
        lambda v: apply_real(e_half, v),
        lambda v: apply_real(e_full, v),
        cfg,
    )
