"""Acceptance gate: ten numbered criteria, one printed verdict line each.

Every criterion runs at the shipped scenario defaults (or the exact parameter
set its statement pins) and asserts the frozen tolerance.  Verdict lines are
printed with output capture suspended so they are visible in a plain pytest
run, pass or fail:

    criterion N: PASS -- <measured numbers>
    criterion N: FAIL -- <measured numbers>

Criterion 4's ordering-and-ratio claim is asserted exactly as stated.  At the
shipped parameters the static map's defect includes an effective mass term of
relative size 2*mass*(g/lambda) ~ 0.53 against a potential of amplitude g, so
the transformed-free pipeline cannot beat the plain-free control at every
snapshot, and the central-window ratio floor sits near 0.5, far above the
frozen 0.2 bound.  The criterion is therefore expected to FAIL; the verdict
line carries the measured numbers.  The claim does hold in weaker forms
(late-time ordering, quadratic error decay in g/lambda), which criterion 4's
companion INFO lines and the fig1 regression tests document.
"""

import time

import numpy as np
import pytest

from freedyn import (
    Coefficient,
    EvolutionConfig,
    PotentialSpec,
    ScenarioConfig,
    SpinorField,
    TransformSpec,
    UnsupportedPotential,
    apply_transform,
    build_transform_field,
    compile_transform,
    density,
    density_relation_factor,
    elimination_residual,
    evolve_dirac,
    evolve_majorana,
    free_dirac_step,
    gaussian_packet,
    make_grid,
    norm,
    run_scenario,
)
from freedyn.cli import parse_config, run_and_emit


def _announce(capsys, line: str):
    with capsys.disabled():
        print(line, flush=True)


def _verdict(capsys, num: int, ok: bool, detail: str) -> str:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} -- {detail}"
    _announce(capsys, line)
    return line


# ---------------------------------------------------------------------------

def test_criterion_1_compiler_soundness(capsys):
    # every exact compiled transform satisfies i sigma_x U' = V U under an
    # independent spectral derivative
    cases = [
        ("scalar linear (antilinear-mass route)",
         PotentialSpec.scalar(Coefficient.linear(2.0)), "majorana"),
        ("scalar constant + imaginary sigma_x (antilinear-mass route)",
         PotentialSpec(f1=Coefficient.constant(1.0), f4=Coefficient.constant(0.5j)),
         "majorana"),
        ("sigma_x linear real", PotentialSpec.sigma_x(Coefficient.linear(0.5)),
         "dirac_exact"),
        ("sigma_x constant real", PotentialSpec.sigma_x(Coefficient.constant(0.8)),
         "dirac_exact"),
        ("sigma_x constant imaginary", PotentialSpec.sigma_x(Coefficient.constant(0.05j)),
         "dirac_exact"),
        ("sigma_x linear complex", PotentialSpec.sigma_x(Coefficient.linear(0.5 + 0.05j)),
         "dirac_exact"),
    ]
    t0 = time.perf_counter()
    residuals = []
    for label, pot, kind in cases:
        ts = compile_transform(pot, kind)
        residuals.append(elimination_residual(pot, ts, (-4.0, 4.0), n_nodes=513))
    elapsed = time.perf_counter() - t0
    worst = max(residuals)
    ok = worst < 1e-8 and elapsed < 1.0
    detail = f"max residual {worst:.2e} over {len(cases)} transforms in {elapsed:.3f} s"
    _verdict(capsys, 1, ok, detail)
    assert worst < 1e-8, detail
    assert elapsed < 1.0, detail


def test_criterion_2_majorana_linear_oracle_agreement(capsys):
    # shipped defaults: m=4, g=2, n=2048, dt=1e-4, T=0.5, window (-3, 3)
    res = run_scenario(ScenarioConfig.from_mapping("majorana_linear", {}))
    err = res.reports["report"].err_ab_windowed[-1]

    half = ScenarioConfig.from_mapping(
        "majorana_linear", dict(dt=5e-5, n_steps=10000, record_every=2000))
    err_half = run_scenario(half).reports["report"].err_ab_windowed[-1]
    ratio = err / err_half

    ok = err < 1e-6 and 3.5 < ratio < 4.5
    detail = (f"windowed density error {err:.3e} at T=0.5 (bound 1e-6); "
              f"dt/2 reduces it {ratio:.3f}x (want ~4)")
    _verdict(capsys, 2, ok, detail)
    assert err < 1e-6, detail
    assert 3.5 < ratio < 4.5, detail


def test_criterion_3_dirac_f4_exact_elimination(capsys):
    res = run_scenario(ScenarioConfig.from_mapping("dirac_f4", {}))
    rep = res.reports["report"]
    err_d = rep.err_ab_global[-1]
    err_s = rep.spinor_err[-1]
    ok = err_d < 1e-8 and err_s < 1e-8
    detail = (f"density error {err_d:.3e}, spinor-after-phase error {err_s:.3e} "
              f"(bounds 1e-8)")
    _verdict(capsys, 3, ok, detail)
    assert err_d < 1e-8, detail
    assert err_s < 1e-8, detail


# Frozen bound for the central-window error ratio of the transformed-free
# pipeline against the plain-free control.  The first oracle run at the
# shipped defaults measured max ratio 4.727 (ordering holding at only 7 of 12
# snapshots); the bound is kept at the intended 0.2 rather than widened to
# what was measured, so the shortfall stays visible here.
_FIG1_CENTRAL_RATIO_BOUND = 0.2


def test_criterion_4_fig1_triptych_ordering(capsys):
    res = run_scenario(ScenarioConfig.from_mapping("fig1", {}))
    rep = res.reports["report"]

    holds = [ab < ac for ab, ac in zip(rep.err_ab_global, rep.err_ac_global)]
    failing_times = [f"{t:g}" for t, h in zip(rep.times, holds) if not h]
    ratios = [ab / ac for ab, ac in zip(rep.err_ab_windowed, rep.err_ac_windowed)]
    max_ratio = max(ratios)

    # supporting evidence for the map being the right one even though the
    # headline ordering fails: the error vanishes with the potential and
    # shrinks quadratically with g/lambda
    zero = run_scenario(ScenarioConfig.from_mapping("fig1", dict(g=0.0, n_steps=1000)))
    zero_err = max(zero.reports["report"].err_ab_global)
    fine = run_scenario(ScenarioConfig.from_mapping(
        "fig1", {"lambda": 150.0, "n_steps": 1000, "record_every": 1000}))
    fine_err = fine.reports["report"].err_ab_windowed[-1]
    _announce(capsys, f"criterion 4 INFO -- g=0 gives err_ab {zero_err:.1e}; "
              f"lambda 15->150 shrinks windowed err_ab to {fine_err:.2e} "
              f"(quadratic in g/lambda)")

    ordering_ok = all(holds)
    ratio_ok = max_ratio <= _FIG1_CENTRAL_RATIO_BOUND
    ok = ordering_ok and ratio_ok
    detail = (f"ordering err(a,b) < err(a,c) holds at {sum(holds)}/{len(holds)} "
              f"snapshots (fails at t = {', '.join(failing_times) or 'none'}); "
              f"max central-window ratio {max_ratio:.3f} vs bound "
              f"{_FIG1_CENTRAL_RATIO_BOUND}")
    _verdict(capsys, 4, ok, detail)
    assert ordering_ok, detail
    assert ratio_ok, detail


def test_criterion_5_linear_scalar_refused_on_complex_mass_route(capsys):
    pot = PotentialSpec.scalar(Coefficient.linear(2.0))
    try:
        compile_transform(pot, "dirac_exact")
    except UnsupportedPotential as exc:
        detail = f"UnsupportedPotential raised: {exc}"
        _verdict(capsys, 5, True, detail)
        # the same potential compiles on the antilinear-mass route
        assert compile_transform(pot, "majorana").exactness == "exact"
        return
    detail = "no UnsupportedPotential raised for scalar gx on the scalar-phase route"
    _verdict(capsys, 5, False, detail)
    pytest.fail(detail)


def test_criterion_6_massless_mass_window_monotonicity(capsys):
    res = run_scenario(ScenarioConfig.from_mapping("massless_mass", {}))
    rep = res.reports["report"]
    sweep = dict(rep.window_sweep)
    # m_target = 0.5: x_c = 0.2 and 1.0 realize m*x_c = 0.1 and 0.5
    ratio = sweep[1.0] / sweep[0.2]
    errs = [e for _c, e in rep.window_sweep]
    monotone = all(b > a for a, b in zip(errs, errs[1:]))
    ok = monotone and ratio >= 3.0
    detail = (f"windowed errors {', '.join(f'{e:.2e}' for e in errs)} over "
              f"x_c = 0.2..1.0 (monotone: {monotone}); "
              f"err(m*x_c=0.5)/err(m*x_c=0.1) = {ratio:.2f} (want >= 3)")
    _verdict(capsys, 6, ok, detail)
    assert monotone, detail
    assert ratio >= 3.0, detail


def test_criterion_7_two_body_branch_ordering(capsys):
    res = run_scenario(ScenarioConfig.from_mapping("two_body", {}))
    maj = res.reports["majorana"].err_ab_windowed[-1]
    dir_ = res.reports["dirac"].err_ab_windowed[-1]

    zero = run_scenario(ScenarioConfig.from_mapping(
        "two_body", dict(omega=0.0, n_steps=1000, record_every=1000)))
    z_maj = max(zero.reports["majorana"].err_ab_global)
    z_dir = max(zero.reports["dirac"].err_ab_global)

    ok = maj < dir_ and z_maj < 1e-12 and z_dir < 1e-12
    detail = (f"windowed error at m*omega*x_c^2 = 0.1: antilinear-mass branch "
              f"{maj:.4f} < complex-mass branch {dir_:.4f}; omega=0 degenerates "
              f"to {z_maj:.1e} / {z_dir:.1e} (bounds 1e-12)")
    _verdict(capsys, 7, ok, detail)
    assert maj < dir_, detail
    assert z_maj < 1e-12 and z_dir < 1e-12, detail


def _order_study(evolver, pot, mass):
    grid = make_grid(-6.0, 6.0, 512)
    psi = gaussian_packet(grid, 0.0, 0.5, 1.0, (1.0, 0.0))
    T = 0.1
    ref = evolver(psi, pot, EvolutionConfig(dt=T / 6400, n_steps=6400, mass=mass))[-1][1]
    errs = []
    for n in (100, 200, 400):
        out = evolver(psi, pot, EvolutionConfig(dt=T / n, n_steps=n, mass=mass))[-1][1]
        errs.append(float(np.sqrt(np.sum(np.abs(out.values - ref.values) ** 2) * grid.dx)))
    orders = [np.log2(a / b) for a, b in zip(errs, errs[1:])]
    return float(np.mean(orders))


def test_criterion_8_solver_invariants(capsys):
    # plane-wave eigenphase
    g = make_grid(-np.pi, np.pi, 64)
    k, m, dt = 3.0, 2.0, 0.37
    E = np.sqrt(k * k + m * m)
    u = np.array([k, E - m], dtype=complex)
    u /= np.linalg.norm(u)
    psi = SpinorField(g, u[:, None] * np.exp(1j * k * g.x)[None, :])
    stepped = free_dirac_step(psi, EvolutionConfig(dt=dt, n_steps=1, mass=m))
    phase_err = float(np.max(np.abs(stepped.values - np.exp(-1j * E * dt) * psi.values)))

    # norm conservation over 1e4 Hermitian steps, both equations
    grid = make_grid(-6.0, 6.0, 1024)
    packet = gaussian_packet(grid, 0.0, 0.5, 1.0, (1.0, 0.0))
    cfg = EvolutionConfig(dt=1e-4, n_steps=10000, mass=4.0)
    pot_cos = PotentialSpec.sigma_z(Coefficient.cosine(2.0, 15.0))
    pot_lin = PotentialSpec.scalar(Coefficient.linear(2.0))
    drift_d = abs(norm(evolve_dirac(packet, pot_cos, cfg)[-1][1]) - 1.0)
    drift_m = abs(norm(evolve_majorana(packet, pot_lin, cfg)[-1][1]) - 1.0)

    # splitting order on both equations
    order_d = _order_study(evolve_dirac, pot_cos, 4.0)
    order_m = _order_study(evolve_majorana, pot_lin, 4.0)

    # time-reversal round trip
    small = make_grid(-6.0, 6.0, 512)
    sp = gaussian_packet(small, 0.0, 0.5, 1.0, (1.0, 1.0j))
    fwd = EvolutionConfig(dt=1e-4, n_steps=1000, mass=4.0)
    bwd = EvolutionConfig(dt=-1e-4, n_steps=1000, mass=4.0)
    rev_d = float(np.max(np.abs(
        evolve_dirac(evolve_dirac(sp, pot_cos, fwd)[-1][1], pot_cos, bwd)[-1][1].values
        - sp.values)))
    rev_m = float(np.max(np.abs(
        evolve_majorana(evolve_majorana(sp, None, fwd)[-1][1], None, bwd)[-1][1].values
        - sp.values)))

    ok = (phase_err < 1e-12 and drift_d < 1e-10 and drift_m < 1e-10
          and abs(order_d - 2.0) <= 0.1 and abs(order_m - 2.0) <= 0.1
          and rev_d < 1e-9 and rev_m < 1e-9)
    detail = (f"eigenphase {phase_err:.1e} (<1e-12); norm drift over 1e4 steps "
              f"{drift_d:.1e}/{drift_m:.1e} (<1e-10); splitting order "
              f"{order_d:.3f}/{order_m:.3f} (2 +- 0.1); reversal "
              f"{rev_d:.1e}/{rev_m:.1e} (<1e-9)")
    _verdict(capsys, 8, ok, detail)
    assert phase_err < 1e-12, detail
    assert drift_d < 1e-10 and drift_m < 1e-10, detail
    assert abs(order_d - 2.0) <= 0.1 and abs(order_m - 2.0) <= 0.1, detail
    assert rev_d < 1e-9 and rev_m < 1e-9, detail


def test_criterion_9_density_relation_constant_imaginary_exponent(capsys):
    c = 0.3
    grid = make_grid(-4.0, 4.0, 512)
    ts = TransformSpec(
        F1=Coefficient.zero(), F2=Coefficient.zero(), F3=Coefficient.zero(),
        F4=Coefficient.constant(1j * c),
        equation_kind="dirac_exact", exactness="exact",
    )
    tf = build_transform_field(ts, grid)
    phi = gaussian_packet(grid, 0.0, 0.7, 0.5, (1.0, 0.5j))
    psi, scale = apply_transform(phi, tf, "forward")
    factor = density_relation_factor(ts, grid).values
    resid = float(np.max(np.abs(
        (scale ** 2) * density(psi).values - factor * density(phi).values)))
    consistent = float(np.max(np.abs(factor - np.exp(2 * c))))
    ok = resid < 1e-10 and consistent < 1e-12
    detail = (f"pointwise residual of |psi|^2 - e^(2c)|phi|^2 is {resid:.1e} "
              f"(bound 1e-10)")
    _verdict(capsys, 9, ok, detail)
    assert resid < 1e-10, detail
    assert consistent < 1e-12, detail


def test_criterion_10_deterministic_artifacts(capsys, tmp_path):
    cfg = parse_config("scenario = massless_mass\nn_points = 1024\n")
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    run_and_emit(cfg, str(out1))
    run_and_emit(cfg, str(out2))
    names1 = sorted(p.name for p in out1.iterdir())
    names2 = sorted(p.name for p in out2.iterdir())
    same_names = names1 == names2
    diffs = [n for n in names1
             if (out1 / n).read_bytes() != (out2 / n).read_bytes()]
    ok = same_names and not diffs
    detail = (f"{len(names1)} files re-emitted byte-identical"
              if ok else f"differing files: {diffs}")
    _verdict(capsys, 10, ok, detail)
    assert same_names, detail
    assert not diffs, detail
