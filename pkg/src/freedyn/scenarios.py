"""End-to-end comparisons between potential dynamics and transformed free dynamics.

Each scenario builds three pipelines on one grid:

  (a) oracle     -- split-step integration of the equation with its potential
                    (or with the oscillator coupling / mass term switched on);
  (b) transformed -- the initial state is mapped through the inverse static
                    transform and then evolved with the *free* equation;
  (c) plain free -- the untouched initial state evolved freely, as a control.

A ComparisonReport collects per-snapshot relative L2 density errors (global and
inside a window), norm and <x> traces, the normalization constants divided out
by the transform, and -- for exact transforms -- the pointwise residual of the
density relation.  The headline number err_ab compares the oracle against the
*back-mapped* prediction U phi_b(t); err_ab_raw compares against phi_b(t)
itself, which is what a plot of pipeline (b) shows.  For unitary transforms the
two coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import GridMismatch, PreconditionViolated
from .lattice import (
    Grid1D,
    RealField,
    density,
    gaussian_packet,
    l2_density_error,
    make_grid,
    norm,
    position_expectation,
    window_mask,
)
from .potentials import Coefficient, PotentialSpec
from .transforms import (
    apply_transform,
    build_transform_field,
    compile_transform,
    density_relation_factor,
)
from .dynamics import (
    EvolutionConfig,
    evolve_dirac,
    evolve_majorana,
    evolve_two_body_dirac,
    evolve_two_body_majorana,
)

__all__ = [
    "ScenarioConfig",
    "ComparisonReport",
    "ScenarioResult",
    "SCENARIO_NAMES",
    "SCENARIO_DEFAULTS",
    "scenario_defaults",
    "scenario_keys",
    "compare_pipelines",
    "run_majorana_linear",
    "run_dirac_f4",
    "run_fig1",
    "run_massless_mass",
    "run_two_body",
    "run_scenario",
    "scenario_checks",
]

SCENARIO_NAMES = (
    "majorana_linear",
    "dirac_f4",
    "fig1",
    "massless_mass",
    "two_body",
)

# Keys shared by every scenario.  Scenario-specific keys are added below.
_COMMON_KEYS = (
    "x_min", "x_max", "n_points",
    "x0", "sigma", "k0", "weights",
    "dt", "n_steps", "record_every",
    "window", "x_c",
)

_SCENARIO_KEYS = {
    "majorana_linear": _COMMON_KEYS + ("mass", "g"),
    "dirac_f4": _COMMON_KEYS + ("mass", "g", "f4_form", "f4_imag"),
    "fig1": _COMMON_KEYS + ("mass", "g", "lambda"),
    "massless_mass": _COMMON_KEYS + ("m_target",),
    "two_body": _COMMON_KEYS + ("mass", "omega"),
}

# Shipped defaults.  Every threshold frozen in the test-suite was measured at
# these values; changing them invalidates the frozen numbers.
SCENARIO_DEFAULTS = {
    "majorana_linear": dict(
        x_min=-6.0, x_max=6.0, n_points=2048,
        x0=0.0, sigma=0.5, k0=0.0, weights=(1.0 + 0.0j, 0.0 + 0.0j),
        mass=4.0, g=2.0,
        dt=1e-4, n_steps=5000, record_every=1000,
        window=(-3.0, 3.0), x_c=(1.5, 3.0, 6.0),
    ),
    "dirac_f4": dict(
        x_min=-8.0, x_max=8.0, n_points=2048,
        x0=0.0, sigma=1.0, k0=0.0, weights=(1.0 + 0.0j, 0.0 + 0.0j),
        mass=1.0, g=0.5, f4_form="linear", f4_imag=0.0,
        dt=1e-4, n_steps=2500, record_every=500,
        window=(-4.0, 4.0), x_c=(2.0, 4.0, 8.0),
    ),
    "fig1": dict(
        x_min=-4.0, x_max=4.0, n_points=2048,
        x0=0.0, sigma=0.35, k0=0.0, weights=(1.0 + 0.0j, 0.0 + 0.0j),
        mass=4.0, g=2.0, **{"lambda": 15.0},
        dt=1e-4, n_steps=12000, record_every=1000,
        window=(-1.0, 1.0), x_c=(1.0, 2.0, 4.0),
    ),
    "massless_mass": dict(
        x_min=-10.0, x_max=10.0, n_points=2048,
        x0=0.0, sigma=0.8, k0=1.0, weights=(1.0 + 0.0j, 0.0 + 0.0j),
        m_target=0.5,
        dt=1e-4, n_steps=300, record_every=100,
        window=(-1.0, 1.0), x_c=(0.2, 0.4, 0.6, 0.8, 1.0),
    ),
    "two_body": dict(
        x_min=-6.0, x_max=6.0, n_points=1024,
        x0=0.0, sigma=0.5, k0=0.0,
        weights=(1.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j),
        mass=1.0, omega=0.4,
        dt=2e-4, n_steps=4000, record_every=1000,
        window=(-0.5, 0.5), x_c=(0.3, 0.5, 0.8, 1.2),
    ),
}


def scenario_defaults(name: str) -> dict:
    """Return a copy of the shipped default key/value set for one scenario."""
    if name not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}")
    return dict(SCENARIO_DEFAULTS[name])


def scenario_keys(name: str) -> tuple:
    """Config keys a scenario accepts (everything else is rejected as unknown)."""
    if name not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}")
    return _SCENARIO_KEYS[name]


def _fmt_float(v: float) -> str:
    return repr(float(v))


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    if z.real == 0.0:
        return repr(z.imag) + "j"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved inputs of one scenario run.

    `weights` has two entries for single-particle scenarios and four for
    two_body.  `window` is the main reporting window; `x_c` lists half-widths
    for the window sweep recorded at the final snapshot.
    """

    scenario: str
    x_min: float
    x_max: float
    n_points: int
    x0: float
    sigma: float
    k0: float
    weights: tuple
    dt: float
    n_steps: int
    record_every: int
    window: tuple
    x_c: tuple
    mass: float = 0.0
    g: float = 0.0
    lam: float = 0.0
    omega: float = 0.0
    m_target: float = 0.0
    f4_form: str = "linear"
    f4_imag: float = 0.0

    def __post_init__(self):
        if self.scenario not in SCENARIO_NAMES:
            raise ValueError(
                f"unknown scenario {self.scenario!r}; known: {', '.join(SCENARIO_NAMES)}"
            )
        want = 4 if self.scenario == "two_body" else 2
        if len(self.weights) != want:
            raise ValueError(
                f"{self.scenario} needs {want} spinor weights, got {len(self.weights)}"
            )
        if len(self.window) != 2 or not self.window[0] < self.window[1]:
            raise ValueError(f"window must be (lo, hi) with lo < hi, got {self.window}")
        if not self.x_c or any(c <= 0 for c in self.x_c):
            raise ValueError("x_c must be a non-empty tuple of positive half-widths")

    @classmethod
    def from_mapping(cls, scenario: str, values: dict) -> "ScenarioConfig":
        merged = scenario_defaults(scenario)
        merged.update(values)
        kwargs = {k: v for k, v in merged.items() if k != "lambda"}
        if "lambda" in merged:
            kwargs["lam"] = merged["lambda"]
        return cls(
            scenario=scenario,
            weights=tuple(complex(w) for w in merged["weights"]),
            window=tuple(float(v) for v in merged["window"]),
            x_c=tuple(float(v) for v in merged["x_c"]),
            **{k: v for k, v in kwargs.items()
               if k not in ("weights", "window", "x_c")},
        )

    def echo(self) -> dict:
        """Config echo: every key this scenario accepts, rendered as the text
        the config parser accepts, so an echo written back as `key = value`
        lines reproduces this exact configuration."""
        out = {"scenario": self.scenario}
        for key in _SCENARIO_KEYS[self.scenario]:
            attr = "lam" if key == "lambda" else key
            val = getattr(self, attr)
            if key in ("n_points", "n_steps", "record_every"):
                out[key] = repr(int(val))
            elif key == "weights":
                out[key] = ",".join(_fmt_complex(w) for w in val)
            elif key in ("window", "x_c"):
                out[key] = ",".join(_fmt_float(v) for v in val)
            elif key == "f4_form":
                out[key] = str(val)
            else:
                out[key] = _fmt_float(val)
        return out


def _as_tuple(seq) -> tuple:
    return tuple(float(v) for v in seq)


@dataclass(frozen=True)
class ComparisonReport:
    """Per-snapshot agreement metrics between the pipelines of one run.

    Tuples are indexed by snapshot; `times` excludes t = 0.  err_ac_* are empty
    when no plain-free control was run.  `density_relation_max_residual` is
    populated only for exact transforms, `spinor_err` only for pure-phase
    transforms (where the full spinors must agree after the known phase).
    """

    scenario: str
    branch: str
    config: dict
    window: tuple
    times: tuple
    err_ab_global: tuple
    err_ab_windowed: tuple
    err_ab_raw_global: tuple
    err_ab_raw_windowed: tuple
    err_ac_global: tuple
    err_ac_windowed: tuple
    norm_a: tuple
    norm_b: tuple
    norm_c: tuple
    x_expect_a: tuple
    x_expect_b: tuple
    x_expect_c: tuple
    inverse_scale: float
    forward_scales: tuple
    density_relation_max_residual: float | None
    spinor_err: tuple | None
    window_sweep: tuple

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.size and not np.all(np.diff(t) > 0):
            raise ValueError("snapshot times must be strictly increasing")
        n = len(self.times)
        for name in ("err_ab_global", "err_ab_windowed", "err_ab_raw_global",
                     "err_ab_raw_windowed", "err_ac_global", "err_ac_windowed"):
            vals = getattr(self, name)
            if len(vals) not in (0, n):
                raise ValueError(f"{name} must have one entry per snapshot or none")
            if any(v < 0 for v in vals):
                raise ValueError(f"{name} contains a negative error")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "branch": self.branch,
            "config": dict(self.config),
            "window": list(self.window),
            "times": list(self.times),
            "err_ab_global": list(self.err_ab_global),
            "err_ab_windowed": list(self.err_ab_windowed),
            "err_ab_raw_global": list(self.err_ab_raw_global),
            "err_ab_raw_windowed": list(self.err_ab_raw_windowed),
            "err_ac_global": list(self.err_ac_global),
            "err_ac_windowed": list(self.err_ac_windowed),
            "norm_a": list(self.norm_a),
            "norm_b": list(self.norm_b),
            "norm_c": list(self.norm_c),
            "x_expect_a": list(self.x_expect_a),
            "x_expect_b": list(self.x_expect_b),
            "x_expect_c": list(self.x_expect_c),
            "inverse_scale": self.inverse_scale,
            "forward_scales": list(self.forward_scales),
            "density_relation_max_residual": self.density_relation_max_residual,
            "spinor_err": None if self.spinor_err is None else list(self.spinor_err),
            "window_sweep": [list(pair) for pair in self.window_sweep],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonReport":
        return cls(
            scenario=d["scenario"],
            branch=d["branch"],
            config=dict(d["config"]),
            window=tuple(d["window"]),
            times=_as_tuple(d["times"]),
            err_ab_global=_as_tuple(d["err_ab_global"]),
            err_ab_windowed=_as_tuple(d["err_ab_windowed"]),
            err_ab_raw_global=_as_tuple(d["err_ab_raw_global"]),
            err_ab_raw_windowed=_as_tuple(d["err_ab_raw_windowed"]),
            err_ac_global=_as_tuple(d["err_ac_global"]),
            err_ac_windowed=_as_tuple(d["err_ac_windowed"]),
            norm_a=_as_tuple(d["norm_a"]),
            norm_b=_as_tuple(d["norm_b"]),
            norm_c=_as_tuple(d["norm_c"]),
            x_expect_a=_as_tuple(d["x_expect_a"]),
            x_expect_b=_as_tuple(d["x_expect_b"]),
            x_expect_c=_as_tuple(d["x_expect_c"]),
            inverse_scale=float(d["inverse_scale"]),
            forward_scales=_as_tuple(d["forward_scales"]),
            density_relation_max_residual=(
                None if d["density_relation_max_residual"] is None
                else float(d["density_relation_max_residual"])
            ),
            spinor_err=None if d["spinor_err"] is None else _as_tuple(d["spinor_err"]),
            window_sweep=tuple(
                (float(a), float(b)) for a, b in d["window_sweep"]
            ),
        )


@dataclass(frozen=True)
class ScenarioResult:
    """Everything one scenario run produced: reports plus snapshot series.

    `reports` holds {"report": ...} for single-branch scenarios and
    {"majorana": ..., "dirac": ...} for two_body.  Every series includes the
    t = 0 state as its first entry.
    """

    config: ScenarioConfig
    reports: dict
    series: dict


def _unit(f):
    s = norm(f)
    if s == 0.0:
        raise PreconditionViolated("cannot normalize a vanished field")
    return type(f)(f.grid, f.values / s)


def _check_schedules(oracle, test):
    if len(oracle) != len(test):
        raise PreconditionViolated(
            f"snapshot schedules differ: {len(oracle)} vs {len(test)} snapshots"
        )
    if not oracle:
        raise PreconditionViolated("cannot compare empty snapshot series")
    for (ta, fa), (tb, fb) in zip(oracle, test):
        if not fa.grid.same_as(fb.grid):
            raise GridMismatch("snapshot series live on different grids")
        scale = max(abs(ta), abs(tb), 1e-30)
        if abs(ta - tb) > 1e-9 * scale:
            raise PreconditionViolated(
                f"snapshot times differ: {ta!r} vs {tb!r}"
            )


def compare_pipelines(oracle_snapshots, test_snapshots,
                      window: tuple | None = None) -> ComparisonReport:
    """Compare two snapshot series of (t, field) pairs on matching grids.

    The relative L2 density error of test against oracle is reported per
    snapshot, globally and inside `window`.  Raises on mismatched schedules or
    grids.  Densities are compared as-is (no renormalization, no transform).
    """
    _check_schedules(oracle_snapshots, test_snapshots)
    grid = oracle_snapshots[0][1].grid
    win = tuple(window) if window is not None else (grid.x_min, grid.x_max)
    times, eg, ew, na, nb, xa, xb = [], [], [], [], [], [], []
    for (ta, fa), (_tb, fb) in zip(oracle_snapshots, test_snapshots):
        da, db = density(fa), density(fb)
        times.append(float(ta))
        eg.append(l2_density_error(da, db))
        ew.append(l2_density_error(da, db, win))
        na.append(norm(fa))
        nb.append(norm(fb))
        xa.append(position_expectation(fa))
        xb.append(position_expectation(fb))
    return ComparisonReport(
        scenario="custom", branch="single", config={},
        window=win, times=tuple(times),
        err_ab_global=tuple(eg), err_ab_windowed=tuple(ew),
        err_ab_raw_global=tuple(eg), err_ab_raw_windowed=tuple(ew),
        err_ac_global=(), err_ac_windowed=(),
        norm_a=tuple(na), norm_b=tuple(nb), norm_c=(),
        x_expect_a=tuple(xa), x_expect_b=tuple(xb), x_expect_c=(),
        inverse_scale=1.0, forward_scales=(),
        density_relation_max_residual=None, spinor_err=None,
        window_sweep=(),
    )


def _grid_and_packet(cfg: ScenarioConfig):
    grid = make_grid(cfg.x_min, cfg.x_max, cfg.n_points)
    psi0 = gaussian_packet(grid, cfg.x0, cfg.sigma, cfg.k0, cfg.weights)
    return grid, psi0


def _build_report(cfg: ScenarioConfig, branch: str, tf, ts, inverse_scale,
                  series_a, series_b, series_c) -> ComparisonReport:
    """Assemble the metrics for one (a, b[, c]) pipeline family.

    series_* include the t = 0 entry; metrics are computed for t > 0 only.
    """
    grid = series_a[0][1].grid
    snaps_a, snaps_b = series_a[1:], series_b[1:]
    snaps_c = series_c[1:] if series_c is not None else None
    _check_schedules(snaps_a, snaps_b)
    if snaps_c is not None:
        _check_schedules(snaps_a, snaps_c)

    s0 = inverse_scale if (tf is not None and not tf.is_unitary) else 1.0
    factor = None
    if ts is not None and ts.exactness == "exact":
        factor = density_relation_factor(ts, grid).values

    phase = None
    if tf is not None and tf.is_pure_phase:
        phase = tf.matrices[:, 0, 0]  # e^{-i F4(x)}, same on both components

    times, fwd_scales = [], []
    ab_g, ab_w, raw_g, raw_w, ac_g, ac_w = [], [], [], [], [], []
    na, nb, nc, xa, xb, xc_ = [], [], [], [], [], []
    spinor_errs = [] if phase is not None else None
    max_resid = 0.0 if factor is not None else None

    win = tuple(cfg.window)
    for idx, ((t, fa), (_tb, fb)) in enumerate(zip(snaps_a, snaps_b)):
        times.append(float(t))
        na.append(norm(fa))
        nb.append(norm(fb))
        xa.append(position_expectation(fa))
        xb.append(position_expectation(fb))

        da_n = density(_unit(fa))
        db_n = density(_unit(fb))
        raw_g.append(l2_density_error(da_n, db_n))
        raw_w.append(l2_density_error(da_n, db_n, win))

        if tf is not None:
            mapped, s_fwd = apply_transform(fb, tf, "forward")
            fwd_scales.append(float(s_fwd))
            dm_n = density(_unit(mapped))
        else:
            mapped, dm_n = fb, db_n
        ab_g.append(l2_density_error(da_n, dm_n))
        ab_w.append(l2_density_error(da_n, dm_n, win))

        if snaps_c is not None:
            fc = snaps_c[idx][1]
            dc_n = density(_unit(fc))
            nc.append(norm(fc))
            xc_.append(position_expectation(fc))
            ac_g.append(l2_density_error(da_n, dc_n))
            ac_w.append(l2_density_error(da_n, dc_n, win))

        if factor is not None:
            # |psi(t)|^2 should equal factor(x) * |phi_abs(t)|^2 with phi_abs
            # the un-normalized mapped solution: undo the t=0 normalization.
            rho_a = density(fa).values
            rho_b_abs = (s0 ** 2) * density(fb).values
            max_resid = max(max_resid, float(np.max(np.abs(rho_a - factor * rho_b_abs))))

        if phase is not None:
            pred = phase[None, :] * (s0 * fb.values)
            num = np.sqrt(np.sum(np.abs(fa.values - pred) ** 2) * grid.dx)
            spinor_errs.append(float(num / max(norm(fa), 1e-300)))

        last_da, last_dm = da_n, dm_n

    sweep = []
    for half in cfg.x_c:
        w = (cfg.x0 - half, cfg.x0 + half)
        sweep.append((float(half), l2_density_error(last_da, last_dm, w)))

    return ComparisonReport(
        scenario=cfg.scenario, branch=branch, config=cfg.echo(),
        window=win, times=tuple(times),
        err_ab_global=tuple(ab_g), err_ab_windowed=tuple(ab_w),
        err_ab_raw_global=tuple(raw_g), err_ab_raw_windowed=tuple(raw_w),
        err_ac_global=tuple(ac_g), err_ac_windowed=tuple(ac_w),
        norm_a=tuple(na), norm_b=tuple(nb), norm_c=tuple(nc),
        x_expect_a=tuple(xa), x_expect_b=tuple(xb), x_expect_c=tuple(xc_),
        inverse_scale=float(inverse_scale),
        forward_scales=tuple(fwd_scales),
        density_relation_max_residual=max_resid,
        spinor_err=None if spinor_errs is None else tuple(spinor_errs),
        window_sweep=tuple(sweep),
    )


def _evolution_config(cfg: ScenarioConfig, mass: float) -> EvolutionConfig:
    return EvolutionConfig(dt=cfg.dt, n_steps=cfg.n_steps,
                           record_every=cfg.record_every, mass=mass)


def _require_scenario(cfg: ScenarioConfig, name: str):
    if cfg.scenario != name:
        raise PreconditionViolated(
            f"this runner handles scenario {name!r}, got {cfg.scenario!r}"
        )


def run_majorana_linear(cfg: ScenarioConfig) -> ScenarioResult:
    """Scalar linear potential g*x under the two-component real-mass equation.

    The eliminating transform exp(-i g x^2 sigma_x / 2) is exact and unitary,
    so the transformed-free pipeline must reproduce the oracle to solver
    accuracy while the plain-free control drifts away.
    """
    _require_scenario(cfg, "majorana_linear")
    grid, psi0 = _grid_and_packet(cfg)
    pot = PotentialSpec.scalar(Coefficient.linear(cfg.g))
    ts = compile_transform(pot, "majorana", mass=cfg.mass, grid=grid)
    tf = build_transform_field(ts, grid)
    phi0, s0 = apply_transform(psi0, tf, "inverse")
    ecfg = _evolution_config(cfg, cfg.mass)
    series_a = [(0.0, psi0)] + evolve_majorana(psi0, pot, ecfg)
    series_b = [(0.0, phi0)] + evolve_majorana(phi0, None, ecfg)
    series_c = [(0.0, psi0)] + evolve_majorana(psi0, None, ecfg)
    report = _build_report(cfg, "single", tf, ts, s0, series_a, series_b, series_c)
    return ScenarioResult(cfg, {"report": report},
                          {"a": series_a, "b": series_b, "c": series_c})


def _dirac_f4_coefficient(cfg: ScenarioConfig) -> Coefficient:
    amp = complex(cfg.g, cfg.f4_imag)
    if cfg.f4_form == "constant":
        return Coefficient.constant(amp)
    if cfg.f4_form == "linear":
        return Coefficient.linear(amp)
    raise ValueError(f"f4_form must be constant|linear, got {cfg.f4_form!r}")


def run_dirac_f4(cfg: ScenarioConfig) -> ScenarioResult:
    """Pure sigma_x potential f4(x), removed exactly by the scalar phase
    exp(-i F4(x)) with F4 the antiderivative of f4.

    Real f4 keeps the transform a pure phase: densities match to solver
    accuracy and the full spinors agree after multiplying the known phase
    back on.  Imaginary parts make the transform a real envelope instead;
    the density relation then carries the factor exp(2 Im F4).
    """
    _require_scenario(cfg, "dirac_f4")
    grid, psi0 = _grid_and_packet(cfg)
    pot = PotentialSpec.sigma_x(_dirac_f4_coefficient(cfg))
    ts = compile_transform(pot, "dirac_exact", mass=cfg.mass, grid=grid)
    tf = build_transform_field(ts, grid)
    phi0, s0 = apply_transform(psi0, tf, "inverse")
    ecfg = _evolution_config(cfg, cfg.mass)
    series_a = [(0.0, psi0)] + evolve_dirac(psi0, pot, ecfg)
    series_b = [(0.0, phi0)] + evolve_dirac(phi0, None, ecfg)
    series_c = [(0.0, psi0)] + evolve_dirac(psi0, None, ecfg)
    report = _build_report(cfg, "single", tf, ts, s0, series_a, series_b, series_c)
    return ScenarioResult(cfg, {"report": report},
                          {"a": series_a, "b": series_b, "c": series_c})


def run_fig1(cfg: ScenarioConfig) -> ScenarioResult:
    """Cosine sigma_z potential g*cos(lambda*x) on a massive two-component
    equation, with the approximate transform exp(-(g/lambda) sin(lambda x) sigma_y).

    Pipelines: (a) oracle with the potential, (b) free evolution of the
    inverse-transformed state, (c) free evolution of the untouched state.
    The transform is exact only where its exponent vanishes, so err_ab has an
    O((g/lambda)^2)-floor plus a mass-driven secular term; the report carries
    every per-snapshot number so the approximation quality is inspectable.
    """
    _require_scenario(cfg, "fig1")
    grid, psi0 = _grid_and_packet(cfg)
    pot = PotentialSpec.sigma_z(Coefficient.cosine(cfg.g, cfg.lam))
    ts = compile_transform(pot, "dirac_approx", mass=cfg.mass, grid=grid)
    tf = build_transform_field(ts, grid)
    phi0, s0 = apply_transform(psi0, tf, "inverse")
    ecfg = _evolution_config(cfg, cfg.mass)
    series_a = [(0.0, psi0)] + evolve_dirac(psi0, pot, ecfg)
    series_b = [(0.0, phi0)] + evolve_dirac(phi0, None, ecfg)
    series_c = [(0.0, psi0)] + evolve_dirac(psi0, None, ecfg)
    report = _build_report(cfg, "single", tf, ts, s0, series_a, series_b, series_c)
    return ScenarioResult(cfg, {"report": report},
                          {"a": series_a, "b": series_b, "c": series_c})


def run_massless_mass(cfg: ScenarioConfig) -> ScenarioResult:
    """Massive free dynamics reproduced by massless evolution of a state
    dressed with exp(-m_target x sigma_y), trustworthy near x = 0.

    (a) evolves the massive free equation, (b) evolves the massless equation
    from the dressed state, (c) evolves the massless equation from the raw
    state.  The window sweep over x_c shows the error growing with window
    half-width, the signature of the near-origin validity of the dressing.
    """
    _require_scenario(cfg, "massless_mass")
    grid, psi0 = _grid_and_packet(cfg)
    pot = PotentialSpec.sigma_z(Coefficient.constant(cfg.m_target))
    ts = compile_transform(pot, "massless_mass", mass=0.0, grid=grid)
    tf = build_transform_field(ts, grid)
    phi0, s0 = apply_transform(psi0, tf, "inverse")
    ecfg_massive = _evolution_config(cfg, cfg.m_target)
    ecfg_massless = _evolution_config(cfg, 0.0)
    series_a = [(0.0, psi0)] + evolve_dirac(psi0, None, ecfg_massive)
    series_b = [(0.0, phi0)] + evolve_dirac(phi0, None, ecfg_massless)
    series_c = [(0.0, psi0)] + evolve_dirac(psi0, None, ecfg_massless)
    report = _build_report(cfg, "single", tf, ts, s0, series_a, series_b, series_c)
    return ScenarioResult(cfg, {"report": report},
                          {"a": series_a, "b": series_b, "c": series_c})


def run_two_body(cfg: ScenarioConfig) -> ScenarioResult:
    """Two-particle oscillator coupling traded for a static exponential map.

    The map exp(-(m omega x^2 / 2) beta12) commutes with both antilinear mass
    couplings of the two-body real-mass equation, so only the kinetic term
    picks up a defect (majorana branch).  Applied to the two-body complex-mass
    equation the same map also disturbs the mass term, so its error must come
    out larger (dirac branch, the negative control).
    """
    _require_scenario(cfg, "two_body")
    grid, psi0 = _grid_and_packet(cfg)
    ts = compile_transform(None, "two_body_majorana", mass=cfg.mass,
                           omega=cfg.omega, grid=grid)
    tf = build_transform_field(ts, grid)
    phi0, s0 = apply_transform(psi0, tf, "inverse")
    ecfg = _evolution_config(cfg, cfg.mass)

    maj_a = [(0.0, psi0)] + evolve_two_body_majorana(psi0, ecfg, omega=cfg.omega)
    maj_b = [(0.0, phi0)] + evolve_two_body_majorana(phi0, ecfg, omega=0.0)
    maj_c = [(0.0, psi0)] + evolve_two_body_majorana(psi0, ecfg, omega=0.0)
    rep_maj = _build_report(cfg, "majorana", tf, ts, s0, maj_a, maj_b, maj_c)

    dir_a = [(0.0, psi0)] + evolve_two_body_dirac(psi0, ecfg, omega=cfg.omega)
    dir_b = [(0.0, phi0)] + evolve_two_body_dirac(phi0, ecfg, omega=0.0)
    dir_c = [(0.0, psi0)] + evolve_two_body_dirac(psi0, ecfg, omega=0.0)
    rep_dir = _build_report(cfg, "dirac", tf, ts, s0, dir_a, dir_b, dir_c)

    return ScenarioResult(
        cfg,
        {"majorana": rep_maj, "dirac": rep_dir},
        {
            "majorana_a": maj_a, "majorana_b": maj_b, "majorana_c": maj_c,
            "dirac_a": dir_a, "dirac_b": dir_b, "dirac_c": dir_c,
        },
    )


_RUNNERS = {
    "majorana_linear": run_majorana_linear,
    "dirac_f4": run_dirac_f4,
    "fig1": run_fig1,
    "massless_mass": run_massless_mass,
    "two_body": run_two_body,
}


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    """Dispatch a resolved configuration to its scenario runner."""
    return _RUNNERS[cfg.scenario](cfg)


# ---------------------------------------------------------------------------
# Scenario-level acceptance checks.
#
# Numeric bounds below were measured once at the shipped defaults (see the
# per-line notes) and then frozen; they are regression guards for `--check`
# and the CLI exit code, not tunables.
# ---------------------------------------------------------------------------

def _check(label, ok, detail):
    return {"label": label, "ok": bool(ok), "detail": detail}


def _norms_ok(report: ComparisonReport, tol: float) -> bool:
    vals = list(report.norm_a) + list(report.norm_b)
    return all(abs(v - 1.0) <= tol for v in vals)


def _checks_majorana_linear(result: ScenarioResult):
    rep = result.reports["report"]
    final_w = rep.err_ab_windowed[-1]
    checks = [
        # measured 7.6e-9 at shipped defaults; bound from the windowed-error claim
        _check("final windowed err_ab < 1e-6", final_w < 1e-6,
               f"err_ab_windowed[-1] = {final_w:.3e}"),
        _check("err_ab below err_ac at every snapshot",
               all(ab < ac for ab, ac in zip(rep.err_ab_global, rep.err_ac_global)),
               f"max err_ab = {max(rep.err_ab_global):.3e}, "
               f"min err_ac = {min(rep.err_ac_global):.3e}"),
        # unitary pipelines: norms conserved to solver accuracy (measured ~1e-13)
        _check("norms conserved to 1e-8", _norms_ok(rep, 1e-8),
               f"max |norm-1| = {max(abs(v - 1.0) for v in rep.norm_a + rep.norm_b):.3e}"),
    ]
    return checks


def _checks_dirac_f4(result: ScenarioResult):
    rep = result.reports["report"]
    checks = [
        # measured 3.4e-10 at shipped defaults (linear real f4)
        _check("final global density error < 1e-8", rep.err_ab_global[-1] < 1e-8,
               f"err_ab_global[-1] = {rep.err_ab_global[-1]:.3e}"),
    ]
    if rep.spinor_err is not None:
        # measured 2.1e-9 at shipped defaults
        checks.append(_check("spinor agreement after known phase < 1e-8",
                             rep.spinor_err[-1] < 1e-8,
                             f"spinor_err[-1] = {rep.spinor_err[-1]:.3e}"))
    if rep.density_relation_max_residual is not None:
        checks.append(_check("pointwise density relation residual < 1e-6",
                             rep.density_relation_max_residual < 1e-6,
                             f"residual = {rep.density_relation_max_residual:.3e}"))
    return checks


def _checks_fig1(result: ScenarioResult):
    rep = result.reports["report"]
    max_ab = max(rep.err_ab_global)
    checks = [
        # regression band measured at shipped defaults: err_ab_global in
        # [0.046, 0.167] across the 12 snapshots
        _check("err_ab_global within frozen band (0, 0.25]",
               0.0 < min(rep.err_ab_global) and max_ab <= 0.25,
               f"err_ab_global range [{min(rep.err_ab_global):.4f}, {max_ab:.4f}]"),
        # measured inverse_scale = 1.00889 at shipped defaults
        _check("inverse normalization constant in [1.0, 1.02]",
               1.0 <= rep.inverse_scale <= 1.02,
               f"inverse_scale = {rep.inverse_scale:.6f}"),
        _check("norms conserved to 1e-8", _norms_ok(rep, 1e-8),
               f"max |norm-1| = {max(abs(v - 1.0) for v in rep.norm_a + rep.norm_b):.3e}"),
    ]
    return checks


def _checks_massless_mass(result: ScenarioResult):
    rep = result.reports["report"]
    errs = [e for _c, e in rep.window_sweep]
    ratio = errs[-1] / errs[0] if errs[0] > 0 else float("inf")
    checks = [
        _check("windowed error increases monotonically with x_c",
               all(b > a for a, b in zip(errs, errs[1:])),
               "sweep errors " + ", ".join(f"{e:.3e}" for e in errs)),
        # measured ratio 3.88 at shipped defaults
        _check("largest-to-smallest window error ratio >= 3", ratio >= 3.0,
               f"ratio = {ratio:.2f}"),
    ]
    return checks


def _checks_two_body(result: ScenarioResult):
    maj = result.reports["majorana"]
    dir_ = result.reports["dirac"]
    errs = [e for _c, e in maj.window_sweep]
    checks = [
        # measured 0.106 (majorana) vs 0.326 (dirac) at shipped defaults
        _check("majorana windowed error below dirac windowed error",
               maj.err_ab_windowed[-1] < dir_.err_ab_windowed[-1],
               f"majorana {maj.err_ab_windowed[-1]:.4f} vs dirac "
               f"{dir_.err_ab_windowed[-1]:.4f}"),
        _check("majorana window sweep monotone in x_c",
               all(b > a for a, b in zip(errs, errs[1:])),
               "sweep errors " + ", ".join(f"{e:.3e}" for e in errs)),
        _check("norms conserved to 1e-8",
               _norms_ok(maj, 1e-8) and _norms_ok(dir_, 1e-8),
               "both branches"),
    ]
    return checks


_CHECKERS = {
    "majorana_linear": _checks_majorana_linear,
    "dirac_f4": _checks_dirac_f4,
    "fig1": _checks_fig1,
    "massless_mass": _checks_massless_mass,
    "two_body": _checks_two_body,
}


def scenario_checks(result: ScenarioResult):
    """Run the frozen acceptance checks for a finished scenario run.

    Returns a list of {"label", "ok", "detail"} dicts; a run passes when every
    entry has ok = True.
    """
    return _CHECKERS[result.config.scenario](result)
