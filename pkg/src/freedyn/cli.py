"""Config parsing, artifact emission and the `freedyn` command line entry point.

Configs are flat `key = value` text; `#` starts a comment.  Every run resolves
to a ScenarioConfig (defaults filled in), executes the scenario, evaluates its
frozen acceptance checks and -- unless --check suppresses emission -- writes:

  <scenario>_<pipeline>_<idx>.csv   one density/spinor table per snapshot
  report.json                       every ComparisonReport of the run
  manifest.json                     config echo + artifact inventory, written last

Output is deterministic: rerunning the same config into a fresh directory
produces byte-identical files.  Exit codes: 0 all checks passed, 2 at least
one check failed, 1 configuration or runtime error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .errors import ConfigError, FreedynError, MissingKey, TypeMismatch, UnknownKey
from .scenarios import (
    SCENARIO_NAMES,
    ScenarioConfig,
    run_scenario,
    scenario_checks,
    scenario_keys,
)

__all__ = [
    "RunManifest",
    "parse_config",
    "load_config",
    "emit_snapshots",
    "emit_report",
    "emit_manifest",
    "run_and_emit",
    "main",
]

_FLOAT_KEYS = {
    "x_min", "x_max", "x0", "sigma", "k0", "dt",
    "mass", "g", "lambda", "omega", "m_target", "f4_imag",
}
_INT_KEYS = {"n_points", "n_steps", "record_every"}
_SCENARIO_BLURBS = {
    "majorana_linear": "linear scalar potential vs transformed free two-component real-mass dynamics (exact)",
    "dirac_f4": "sigma_x potential removed by a scalar phase/envelope (exact)",
    "fig1": "cosine sigma_z potential vs transformed free massive dynamics (approximate)",
    "massless_mass": "massive free dynamics emulated by massless evolution of a dressed state (approximate, near x = 0)",
    "two_body": "two-particle oscillator coupling absorbed into a static map (approximate; dirac branch is the negative control)",
}


def _parse_float(key: str, text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise TypeMismatch(f"key {key!r}: expected a number, got {text!r}") from None
    if v != v or v in (float("inf"), float("-inf")):
        raise TypeMismatch(f"key {key!r}: must be finite, got {text!r}")
    return v


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise TypeMismatch(f"key {key!r}: expected an integer, got {text!r}") from None


def _parse_complex_list(key: str, text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    try:
        return tuple(complex(p) for p in parts)
    except ValueError:
        raise TypeMismatch(
            f"key {key!r}: expected comma-separated complex numbers, got {text!r}"
        ) from None


def _parse_float_list(key: str, text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise TypeMismatch(
            f"key {key!r}: expected comma-separated numbers, got {text!r}"
        ) from None


def _parse_value(key: str, text: str):
    if key in _FLOAT_KEYS:
        v = _parse_float(key, text)
        if key == "dt" and v <= 0:
            raise TypeMismatch(f"key 'dt': must be > 0, got {text!r}")
        if key == "sigma" and v <= 0:
            raise TypeMismatch(f"key 'sigma': must be > 0, got {text!r}")
        return v
    if key in _INT_KEYS:
        v = _parse_int(key, text)
        if key == "n_points" and v < 4:
            raise TypeMismatch(f"key 'n_points': must be >= 4, got {text!r}")
        if key == "n_steps" and v < 1:
            raise TypeMismatch(f"key 'n_steps': must be >= 1, got {text!r}")
        if key == "record_every" and v < 0:
            raise TypeMismatch(f"key 'record_every': must be >= 0, got {text!r}")
        return v
    if key == "weights":
        return _parse_complex_list(key, text)
    if key in ("window", "x_c"):
        vals = _parse_float_list(key, text)
        if key == "window" and len(vals) != 2:
            raise TypeMismatch(f"key 'window': expected two numbers lo,hi, got {text!r}")
        return vals
    if key == "f4_form":
        if text not in ("constant", "linear"):
            raise TypeMismatch(f"key 'f4_form': must be constant|linear, got {text!r}")
        return text
    raise UnknownKey(f"unknown key: {key!r}")


def parse_config(text: str) -> ScenarioConfig:
    """Parse flat `key = value` config text into a resolved ScenarioConfig.

    Raises MissingKey when `scenario` is absent, UnknownKey for keys the
    chosen scenario does not accept, TypeMismatch for unparsable or
    out-of-range values, ConfigError for malformed lines or duplicates.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected `key = value`, got {raw.strip()!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    if "scenario" not in entries:
        raise MissingKey("missing required key: 'scenario'")
    scenario = entries.pop("scenario")
    if scenario not in SCENARIO_NAMES:
        raise TypeMismatch(
            f"key 'scenario': must be one of {', '.join(SCENARIO_NAMES)}, got {scenario!r}"
        )
    allowed = scenario_keys(scenario)
    for key in entries:
        if key not in allowed:
            raise UnknownKey(f"unknown key for scenario {scenario!r}: {key!r}")
    values = {key: _parse_value(key, text_val) for key, text_val in entries.items()}
    try:
        return ScenarioConfig.from_mapping(scenario, values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str) -> ScenarioConfig:
    """Read a config file and parse it."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


@dataclass(frozen=True)
class RunManifest:
    """Inventory of one emitted run: what was configured and what was written.

    `files` holds {"name", "sha256", "bytes"} entries for every artifact except
    the manifest itself, which is always written last.
    """

    artifact_version: str
    scenario: str
    config: dict
    files: tuple

    def to_dict(self) -> dict:
        return {
            "artifact_version": self.artifact_version,
            "scenario": self.scenario,
            "config": dict(self.config),
            "files": [dict(f) for f in self.files],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        return cls(
            artifact_version=d["artifact_version"],
            scenario=d["scenario"],
            config=dict(d["config"]),
            files=tuple(dict(f) for f in d["files"]),
        )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_bytes(out_dir: str, name: str, data: bytes) -> dict:
    path = os.path.join(out_dir, name)
    with open(path, "wb") as fh:
        fh.write(data)
    return {
        "name": name,
        "sha256": hashlib.sha256(data).hexdigest(),
        "bytes": len(data),
    }


def snapshot_csv(t: float, field) -> bytes:
    """Render one snapshot as CSV: a `# t=` line, a header, one row per node.

    Columns are x, |field|^2 and the real/imaginary parts of each spinor
    component (two components for single-particle fields, four for two-body).
    """
    values = field.values
    n_comp = values.shape[0]
    header = ["x", "density"]
    for c in range(1, n_comp + 1):
        header += [f"re_c{c}", f"im_c{c}"]
    dens = (abs(values) ** 2).sum(axis=0)
    lines = [f"# t={_fmt(t)}", ",".join(header)]
    x = field.grid.x
    for j in range(values.shape[1]):
        row = [_fmt(x[j]), _fmt(dens[j])]
        for c in range(n_comp):
            row.append(_fmt(values[c, j].real))
            row.append(_fmt(values[c, j].imag))
        lines.append(",".join(row))
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_snapshots(series, out_dir: str, prefix: str) -> list:
    """Write one CSV per (t, field) snapshot; returns file inventory entries."""
    entries = []
    for idx, (t, field) in enumerate(series):
        name = f"{prefix}_{idx:03d}.csv"
        entries.append(_write_bytes(out_dir, name, snapshot_csv(t, field)))
    return entries


def _json_bytes(payload: dict) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("ascii")


def emit_report(result, out_dir: str) -> dict:
    """Write report.json holding every ComparisonReport of the run."""
    payload = {
        "scenario": result.config.scenario,
        "config": result.config.echo(),
        "reports": {name: rep.to_dict() for name, rep in result.reports.items()},
    }
    return _write_bytes(out_dir, "report.json", _json_bytes(payload))


def emit_manifest(manifest: RunManifest, out_dir: str) -> dict:
    """Write manifest.json (always the final artifact of a run)."""
    return _write_bytes(out_dir, "manifest.json", _json_bytes(manifest.to_dict()))


def run_and_emit(cfg: ScenarioConfig, out_dir: str):
    """Run a scenario, write all artifacts into out_dir, return (result, checks).

    Emission order is fixed: snapshot CSVs in series order, then report.json,
    then manifest.json listing everything written before it.
    """
    result = run_scenario(cfg)
    os.makedirs(out_dir, exist_ok=True)
    inventory = []
    for key, series in result.series.items():
        inventory.extend(emit_snapshots(series, out_dir, f"{cfg.scenario}_{key}"))
    inventory.append(emit_report(result, out_dir))
    manifest = RunManifest(
        artifact_version=__version__,
        scenario=cfg.scenario,
        config=cfg.echo(),
        files=tuple(inventory),
    )
    emit_manifest(manifest, out_dir)
    return result, scenario_checks(result)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for failed
    # acceptance checks, so usage problems are remapped to exit 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="freedyn",
        description="Run potential-vs-transformed-free comparison scenarios "
                    "and emit density movies plus a machine-readable report.",
    )
    p.add_argument("--config", metavar="PATH",
                   help="flat key = value config file (see README for keys)")
    p.add_argument("--scenario", metavar="NAME",
                   help="scenario to run with shipped defaults "
                        f"({', '.join(SCENARIO_NAMES)})")
    p.add_argument("--out", metavar="DIR", default=".",
                   help="output directory for CSV/JSON artifacts (default: .)")
    p.add_argument("--check", action="store_true",
                   help="run the scenario and its acceptance checks without "
                        "writing artifacts")
    p.add_argument("--list-scenarios", action="store_true",
                   help="list available scenarios and exit")
    return p


def _print_checks(checks) -> bool:
    all_ok = True
    for c in checks:
        status = "ok  " if c["ok"] else "FAIL"
        print(f"{status} {c['label']} -- {c['detail']}")
        all_ok &= c["ok"]
    return all_ok


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.list_scenarios:
        for name in SCENARIO_NAMES:
            print(f"{name}: {_SCENARIO_BLURBS[name]}")
        return 0

    try:
        if args.config is not None:
            cfg = load_config(args.config)
            if args.scenario is not None and args.scenario != cfg.scenario:
                print(
                    f"freedyn: error: --scenario {args.scenario!r} contradicts "
                    f"config scenario {cfg.scenario!r}",
                    file=sys.stderr,
                )
                return 1
        elif args.scenario is not None:
            if args.scenario not in SCENARIO_NAMES:
                print(
                    f"freedyn: error: unknown scenario {args.scenario!r}; known: "
                    f"{', '.join(SCENARIO_NAMES)}",
                    file=sys.stderr,
                )
                return 1
            cfg = ScenarioConfig.from_mapping(args.scenario, {})
        else:
            print("freedyn: error: need --config or --scenario (or --list-scenarios)",
                  file=sys.stderr)
            return 1

        if args.check:
            result = run_scenario(cfg)
            checks = scenario_checks(result)
            all_ok = _print_checks(checks)
            return 0 if all_ok else 2

        result, checks = run_and_emit(cfg, args.out)
        all_ok = _print_checks(checks)
        n_files = sum(len(s) for s in result.series.values()) + 2
        print(f"wrote {n_files} files to {args.out}")
        return 0 if all_ok else 2

    except ConfigError as exc:
        print(f"freedyn: config error: {exc}", file=sys.stderr)
        return 1
    except FreedynError as exc:
        print(f"freedyn: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"freedyn: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
