"""Batch command-line front-end.

Every run is driven by a JSON config file, writes deterministic CSV output
plus a JSON manifest into an output directory, and exits with a documented
code per error class. Figures are rendered alongside the CSVs by default;
pass --no-figures to skip them. The CSVs are the normative output.

Exit codes:
    0  success
    1  unclassified error
    2  config file unreadable or not valid JSON
    3  config schema violation (message names the offending key path)
    4  material name not in the catalog
    5  lossless dielectric evaluated or integrated across its resonance
    6  quadrature did not converge within the panel budget
    7  asymptote fit failed (crossover)
    8  optimization objective vanished identically
    9  material lacks the mechanical data for a derived tip speed
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .bogoliubov import calibrate_normalization
from .emission import (
    RTOL_DEFAULT,
    RTOL_MAX,
    RTOL_MIN,
    SECONDS_PER_YEAR,
    enhancement_curve,
    quasistatic_rate,
    sample_spectrum,
    surface_mode_frequencies,
    total_rate,
)
from .errors import (
    ConvergenceError,
    DegenerateObjectiveError,
    FitError,
    LosslessPoleError,
    LosslessResonanceCrossingError,
    MissingMechanicalDataError,
    ParseError,
    SchemaError,
    SpindceError,
    UnknownMaterialError,
)
from .geometry import ECCENTRICITY_MAX, SpheroidGeometry
from .materials import (
    ConstantPermittivity,
    LorentzPermittivity,
    get_material,
    material_from_entry,
)
from .optimize import (
    XTOL_DEFAULT,
    XTOL_MAX,
    XTOL_MIN,
    ConstraintSpec,
    constrained_omega,
    constraint_from_material,
    crossover_from_records,
    optimal_eccentricity,
    sweep_eccentricity,
    sweep_size,
)
from .rotation import SpinConfiguration

CONSTANTS_VERSION = "CODATA-2018"
MANIFEST_NAME = "run_manifest.json"

COMMANDS = (
    "spectrum",
    "rate",
    "enhancement",
    "sweep-size",
    "sweep-ecc",
    "optimize",
)

_BASE_KEYS = {"command", "material", "rtol", "out_dir"}
_ALLOWED_KEYS = {
    "spectrum": _BASE_KEYS | {"geometry", "spin", "n_points"},
    "rate": _BASE_KEYS | {"geometry", "spin"},
    "enhancement": _BASE_KEYS | {"geometry", "omega_grid"},
    "sweep-size": _BASE_KEYS | {"eccentricity", "constraint", "r_grid"},
    "sweep-ecc": _BASE_KEYS | {"r_parallel_m", "constraint", "e_grid"},
    "optimize": _BASE_KEYS | {"r_parallel_m", "constraint", "xtol"},
}
_REQUIRED_KEYS = {
    "spectrum": {"material", "geometry", "spin"},
    "rate": {"material", "geometry", "spin"},
    "enhancement": {"material", "geometry", "omega_grid"},
    "sweep-size": {"material", "eccentricity", "constraint"},
    "sweep-ecc": {"material", "r_parallel_m", "constraint"},
    "optimize": {"material", "r_parallel_m", "constraint"},
}

_EXIT_CODES = (
    (ParseError, 2),
    (SchemaError, 3),
    (UnknownMaterialError, 4),
    (LosslessPoleError, 5),
    (LosslessResonanceCrossingError, 5),
    (ConvergenceError, 6),
    (FitError, 7),
    (DegenerateObjectiveError, 8),
    (MissingMechanicalDataError, 9),
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    material: object
    geometry: SpheroidGeometry | None
    spin: SpinConfiguration | None
    constraint: ConstraintSpec | None
    rtol: float
    params: dict
    conversions: tuple
    canonical: str
    config_hash: str
    out_dir: str | None


# ---------------------------------------------------------------- schema


def _as_object(value, path):
    if not isinstance(value, dict):
        raise SchemaError(f"{path}: expected an object")
    return value


def _as_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaError(f"{path}: must be finite")
    return value


def _as_positive(value, path):
    number = _as_number(value, path)
    if number <= 0.0:
        raise SchemaError(f"{path}: must be positive")
    return number


def _as_nonnegative(value, path):
    number = _as_number(value, path)
    if number < 0.0:
        raise SchemaError(f"{path}: must be nonnegative")
    return number


def _as_int(value, path, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer")
    if value < minimum:
        raise SchemaError(f"{path}: must be >= {minimum}")
    return value


def _reject_unknown(obj, allowed, path):
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}{key}: unknown key")


def _parse_geometry(raw):
    obj = _as_object(raw, "geometry")
    _reject_unknown(obj, {"r_parallel_m", "eccentricity"}, "geometry.")
    for key in ("r_parallel_m", "eccentricity"):
        if key not in obj:
            raise SchemaError(f"geometry.{key}: missing required key")
    r_parallel = _as_positive(obj["r_parallel_m"], "geometry.r_parallel_m")
    eccentricity = _as_number(obj["eccentricity"], "geometry.eccentricity")
    try:
        return SpheroidGeometry(r_parallel=r_parallel, eccentricity=eccentricity)
    except SpindceError as exc:
        raise SchemaError(f"geometry: {exc}") from exc


def _parse_spin(raw, conversions):
    obj = _as_object(raw, "spin")
    _reject_unknown(obj, {"omega_rot_rad_s", "frequency_ghz"}, "spin.")
    given = [key for key in ("omega_rot_rad_s", "frequency_ghz") if key in obj]
    if len(given) != 1:
        raise SchemaError(
            "spin: exactly one of 'omega_rot_rad_s' or 'frequency_ghz' is required"
        )
    if given[0] == "omega_rot_rad_s":
        omega_rot = _as_nonnegative(obj["omega_rot_rad_s"], "spin.omega_rot_rad_s")
    else:
        ghz = _as_nonnegative(obj["frequency_ghz"], "spin.frequency_ghz")
        omega_rot = 2.0 * math.pi * 1e9 * ghz
        conversions.append(
            f"spin.frequency_ghz={ghz!r} converted as "
            f"omega_rot_rad_s = 2*pi*1e9*frequency_ghz = {omega_rot!r}"
        )
    return SpinConfiguration(omega_rot=omega_rot)


def _parse_constraint(raw, material, conversions):
    obj = _as_object(raw, "constraint")
    _reject_unknown(obj, {"tip_speed_m_s", "tip_speed_from_material"}, "constraint.")
    given = [
        key for key in ("tip_speed_m_s", "tip_speed_from_material") if key in obj
    ]
    if len(given) != 1:
        raise SchemaError(
            "constraint: exactly one of 'tip_speed_m_s' or "
            "'tip_speed_from_material' is required"
        )
    if given[0] == "tip_speed_m_s":
        tip_speed = _as_nonnegative(obj["tip_speed_m_s"], "constraint.tip_speed_m_s")
        return ConstraintSpec(tip_speed=tip_speed, source="override")
    if obj["tip_speed_from_material"] is not True:
        raise SchemaError("constraint.tip_speed_from_material: must be true")
    constraint = constraint_from_material(material)
    conversions.append(
        f"constraint.tip_speed_from_material resolved to tip_speed_m_s="
        f"{constraint.tip_speed!r} for material '{material.name}'"
    )
    return constraint


def _parse_rtol(raw_config):
    if "rtol" not in raw_config:
        return RTOL_DEFAULT
    rtol = _as_positive(raw_config["rtol"], "rtol")
    if not (RTOL_MIN <= rtol <= RTOL_MAX):
        raise SchemaError(f"rtol: must lie in [{RTOL_MIN}, {RTOL_MAX}]")
    return rtol


def _parse_omega_grid(raw):
    obj = _as_object(raw, "omega_grid")
    allowed = {"min_rad_s", "max_rad_s", "n_points", "spacing"}
    _reject_unknown(obj, allowed, "omega_grid.")
    for key in ("min_rad_s", "max_rad_s"):
        if key not in obj:
            raise SchemaError(f"omega_grid.{key}: missing required key")
    low = _as_positive(obj["min_rad_s"], "omega_grid.min_rad_s")
    high = _as_positive(obj["max_rad_s"], "omega_grid.max_rad_s")
    if high <= low:
        raise SchemaError("omega_grid.max_rad_s: must exceed min_rad_s")
    n_points = _as_int(obj.get("n_points", 60), "omega_grid.n_points", 2)
    spacing = obj.get("spacing", "log")
    if spacing not in ("log", "linear"):
        raise SchemaError("omega_grid.spacing: must be \"log\" or \"linear\"")
    if spacing == "log":
        grid = np.geomspace(low, high, n_points)
    else:
        grid = np.linspace(low, high, n_points)
    return {
        "grid": grid,
        "min_rad_s": low,
        "max_rad_s": high,
        "n_points": n_points,
        "spacing": spacing,
    }


def _parse_r_grid(raw):
    defaults = {"min_m": 1e-6, "max_m": 100e-6, "n_points": 64}
    if raw is None:
        obj = {}
    else:
        obj = _as_object(raw, "r_grid")
    _reject_unknown(obj, set(defaults), "r_grid.")
    low = _as_positive(obj.get("min_m", defaults["min_m"]), "r_grid.min_m")
    high = _as_positive(obj.get("max_m", defaults["max_m"]), "r_grid.max_m")
    if high <= low:
        raise SchemaError("r_grid.max_m: must exceed min_m")
    n_points = _as_int(obj.get("n_points", defaults["n_points"]), "r_grid.n_points", 2)
    return {
        "grid": np.geomspace(low, high, n_points),
        "min_m": low,
        "max_m": high,
        "n_points": n_points,
    }


def _parse_e_grid(raw):
    defaults = {"min": 0.01, "max": 0.99, "n_points": 50}
    if raw is None:
        obj = {}
    else:
        obj = _as_object(raw, "e_grid")
    _reject_unknown(obj, set(defaults), "e_grid.")
    low = _as_nonnegative(obj.get("min", defaults["min"]), "e_grid.min")
    high = _as_number(obj.get("max", defaults["max"]), "e_grid.max")
    if high <= low:
        raise SchemaError("e_grid.max: must exceed min")
    if high > 0.999:
        raise SchemaError("e_grid.max: must be <= 0.999")
    n_points = _as_int(obj.get("n_points", defaults["n_points"]), "e_grid.n_points", 2)
    return {
        "grid": np.linspace(low, high, n_points),
        "min": low,
        "max": high,
        "n_points": n_points,
    }


def _canonicalize(raw_config):
    canonical = json.dumps(raw_config, sort_keys=True, separators=(",", ":"))
    return canonical, hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def parse_config(path, command, catalog=None):
    """Load, validate, and freeze a run configuration.

    Unknown keys anywhere are schema errors; physics parameters have no
    silent defaults (only rtol, grid shapes, and xtol do).
    """
    if command not in COMMANDS:
        raise SchemaError(f"unknown command '{command}'")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("config root must be a JSON object")

    allowed = _ALLOWED_KEYS[command]
    for key in raw:
        if key not in allowed:
            raise SchemaError(f"{key}: unknown key for command '{command}'")
    for key in _REQUIRED_KEYS[command]:
        if key not in raw:
            raise SchemaError(f"{key}: missing required key")
    if "command" in raw and raw["command"] != command:
        raise SchemaError(
            f"command: config declares '{raw['command']}' but '{command}' was invoked"
        )

    conversions = []
    if isinstance(raw["material"], str):
        material = get_material(raw["material"], catalog=catalog)
    else:
        material = material_from_entry(
            _as_object(raw["material"], "material"), where="material"
        )

    geometry = _parse_geometry(raw["geometry"]) if "geometry" in raw else None
    spin = _parse_spin(raw["spin"], conversions) if "spin" in raw else None
    constraint = (
        _parse_constraint(raw["constraint"], material, conversions)
        if "constraint" in raw
        else None
    )
    rtol = _parse_rtol(raw)

    params = {}
    if command == "spectrum":
        params["n_points"] = _as_int(raw.get("n_points", 512), "n_points", 16)
    elif command == "enhancement":
        params["omega_grid"] = _parse_omega_grid(raw["omega_grid"])
    elif command == "sweep-size":
        eccentricity = _as_nonnegative(raw["eccentricity"], "eccentricity")
        if eccentricity > ECCENTRICITY_MAX:
            raise SchemaError(f"eccentricity: must be <= {ECCENTRICITY_MAX}")
        params["eccentricity"] = eccentricity
        params["r_grid"] = _parse_r_grid(raw.get("r_grid"))
    elif command == "sweep-ecc":
        params["r_parallel_m"] = _as_positive(raw["r_parallel_m"], "r_parallel_m")
        params["e_grid"] = _parse_e_grid(raw.get("e_grid"))
    elif command == "optimize":
        params["r_parallel_m"] = _as_positive(raw["r_parallel_m"], "r_parallel_m")
        xtol = _as_positive(raw.get("xtol", XTOL_DEFAULT), "xtol")
        if not (XTOL_MIN <= xtol <= XTOL_MAX):
            raise SchemaError(f"xtol: must lie in [{XTOL_MIN}, {XTOL_MAX}]")
        params["xtol"] = xtol

    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise SchemaError("out_dir: expected a string")

    canonical, config_hash = _canonicalize(raw)
    return RunConfig(
        command=command,
        material=material,
        geometry=geometry,
        spin=spin,
        constraint=constraint,
        rtol=rtol,
        params=params,
        conversions=tuple(conversions),
        canonical=canonical,
        config_hash=config_hash,
        out_dir=out_dir,
    )


# ---------------------------------------------------------------- output


def _format_cell(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def _write_csv(path, header_pairs, columns, rows):
    # repr() floats give shortest round-trip decimals, so byte-identical
    # files are also value-identical
    lines = [f"# {key}={value}" for key, value in header_pairs]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    return path


def _base_header(config):
    return [
        ("config_hash", config.config_hash),
        ("command", config.command),
        ("code_version", __version__),
        ("constants_version", CONSTANTS_VERSION),
        ("material", config.material.name),
    ]


def _write_manifest(out_dir, config, output_files, extra=None):
    manifest = {
        "command": config.command if config else "validate",
        "config_hash": config.config_hash if config else None,
        "config_canonical": config.canonical if config else None,
        "conversions": list(config.conversions) if config else [],
        "constants_version": CONSTANTS_VERSION,
        "code_version": __version__,
        "timestamp_utc": datetime.now(timezone.utc).isoformat(),
        "output_files": sorted(output_files),
    }
    if extra:
        manifest.update(extra)
    path = out_dir / MANIFEST_NAME
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _run_spectrum(config, out_dir, render_figures):
    geom, spin = config.geometry, config.spin
    model = config.material.dielectric
    spectrum = sample_spectrum(geom, model, spin, config.params["n_points"])
    header = _base_header(config) + [
        ("r_parallel_m", repr(geom.r_parallel)),
        ("eccentricity", repr(geom.eccentricity)),
        ("omega_rot_rad_s", repr(spin.omega_rot)),
        ("n_points_uniform", config.params["n_points"]),
        ("grid", "uniform on [0, 2*omega_rot] plus resonance abscissae"),
    ]
    csv_path = _write_csv(
        out_dir / "spectrum.csv",
        header,
        ["omega_rad_s", "d_gamma_per_rad_s"],
        zip(spectrum.omega_grid, spectrum.d_gamma),
    )
    outputs = [csv_path]
    peak = int(np.argmax(spectrum.d_gamma))
    print(f"rows: {spectrum.omega_grid.size}")
    print(
        f"peak d_gamma: {float(spectrum.d_gamma[peak])!r} photons/s/(rad/s) "
        f"at omega = {float(spectrum.omega_grid[peak])!r} rad/s"
    )
    modes = surface_mode_frequencies(geom, model)
    if modes is not None:
        print(
            f"surface modes: omega_parallel = {modes[0]!r} rad/s, "
            f"omega_perp = {modes[1]!r} rad/s"
        )
    if render_figures:
        from . import figures

        outputs.append(
            figures.spectrum_figure(
                out_dir / "spectrum.png",
                spectrum.omega_grid,
                spectrum.d_gamma,
                spin.omega_rot,
            )
        )
    return outputs


def _run_rate(config, out_dir, render_figures):
    geom, spin = config.geometry, config.spin
    model = config.material.dielectric
    result = total_rate(geom, model, spin, rtol=config.rtol)
    header = _base_header(config) + [
        ("r_parallel_m", repr(geom.r_parallel)),
        ("eccentricity", repr(geom.eccentricity)),
        ("omega_rot_rad_s", repr(spin.omega_rot)),
        ("rtol", repr(config.rtol)),
    ]
    csv_path = _write_csv(
        out_dir / "rate.csv",
        header,
        [
            "omega_rot_rad_s",
            "gamma_per_s",
            "gamma_qs_per_s",
            "enhancement",
            "abs_error_per_s",
            "function_evals",
        ],
        [
            (
                spin.omega_rot,
                result.gamma_total,
                result.gamma_qs,
                result.enhancement,
                result.abs_error_estimate,
                result.function_evals,
            )
        ],
    )
    print(f"gamma_total: {result.gamma_total!r} photons/s")
    print(f"gamma_total: {result.gamma_total * SECONDS_PER_YEAR!r} photons/year")
    print(f"gamma_qs:    {result.gamma_qs!r} photons/s")
    print(f"enhancement: {result.enhancement!r}")
    return [csv_path]


def _run_enhancement(config, out_dir, render_figures):
    geom = config.geometry
    model = config.material.dielectric
    grid_info = config.params["omega_grid"]
    rows = enhancement_curve(geom, model, grid_info["grid"], rtol=config.rtol)
    header = _base_header(config) + [
        ("r_parallel_m", repr(geom.r_parallel)),
        ("eccentricity", repr(geom.eccentricity)),
        ("omega_min_rad_s", repr(grid_info["min_rad_s"])),
        ("omega_max_rad_s", repr(grid_info["max_rad_s"])),
        ("n_points", grid_info["n_points"]),
        ("spacing", grid_info["spacing"]),
        ("rtol", repr(config.rtol)),
    ]
    csv_path = _write_csv(
        out_dir / "enhancement.csv",
        header,
        ["omega_rot_rad_s", "enhancement"],
        rows,
    )
    outputs = [csv_path]
    peak = int(np.argmax(rows[:, 1]))
    print(
        f"max enhancement {float(rows[peak, 1])!r} "
        f"at omega_rot = {float(rows[peak, 0])!r} rad/s"
    )
    if render_figures:
        from . import figures

        outputs.append(
            figures.enhancement_figure(
                out_dir / "enhancement.png", rows[:, 0], rows[:, 1]
            )
        )
    return outputs


_SWEEP_COLUMNS = [
    "r_parallel_m",
    "eccentricity",
    "omega_rot_rad_s",
    "gamma_per_s",
    "gamma_qs_per_s",
    "enhancement",
]


def _sweep_row(record):
    return (
        record.r_parallel,
        record.eccentricity,
        record.omega_rot,
        record.gamma_total,
        record.gamma_qs,
        record.enhancement,
    )


def _run_sweep_size(config, out_dir, render_figures):
    material = config.material
    constraint = config.constraint
    eccentricity = config.params["eccentricity"]
    grid_info = config.params["r_grid"]
    records = sweep_size(
        material, eccentricity, grid_info["grid"], constraint, rtol=config.rtol
    )
    header = _base_header(config) + [
        ("eccentricity", repr(eccentricity)),
        ("tip_speed_m_s", repr(constraint.tip_speed)),
        ("constraint_source", constraint.source),
        ("r_min_m", repr(grid_info["min_m"])),
        ("r_max_m", repr(grid_info["max_m"])),
        ("n_points", grid_info["n_points"]),
        ("rtol", repr(config.rtol)),
    ]
    csv_path = _write_csv(
        out_dir / "sweep_size.csv",
        header,
        _SWEEP_COLUMNS,
        (_sweep_row(record) for record in records),
    )
    outputs = [csv_path]
    crossover = None
    try:
        crossover = crossover_from_records(material, constraint, records)
        print(f"crossover (analytic): {crossover.analytic_m!r} m")
        print(f"crossover (fitted):   {crossover.fitted_m!r} m")
        print(f"tail slope: {crossover.tail_slope!r}")
    except SpindceError as exc:
        print(f"crossover fit unavailable: {exc}")
    if render_figures:
        from . import figures

        outputs.append(
            figures.sweep_size_figure(
                out_dir / "sweep_size.png",
                [record.r_parallel for record in records],
                [record.gamma_total for record in records],
                crossover.analytic_m if crossover else None,
            )
        )
    return outputs


def _run_sweep_ecc(config, out_dir, render_figures):
    material = config.material
    constraint = config.constraint
    r_parallel = config.params["r_parallel_m"]
    grid_info = config.params["e_grid"]
    sweep = sweep_eccentricity(
        material, r_parallel, constraint, grid_info["grid"], rtol=config.rtol
    )
    header = _base_header(config) + [
        ("r_parallel_m", repr(r_parallel)),
        ("tip_speed_m_s", repr(constraint.tip_speed)),
        ("constraint_source", constraint.source),
        ("e_min", repr(grid_info["min"])),
        ("e_max", repr(grid_info["max"])),
        ("n_points", grid_info["n_points"]),
        ("rtol", repr(config.rtol)),
    ]
    rows = (
        _sweep_row(record) + (float(norm),)
        for record, norm in zip(sweep.records, sweep.normalized)
    )
    csv_path = _write_csv(
        out_dir / "sweep_ecc.csv",
        header,
        _SWEEP_COLUMNS + ["gamma_normalized"],
        rows,
    )
    outputs = [csv_path]
    best = sweep.records[sweep.argmax_index]
    print(
        f"max gamma {best.gamma_total!r} photons/s at eccentricity "
        f"{best.eccentricity!r}"
    )
    if render_figures:
        from . import figures

        outputs.append(
            figures.sweep_ecc_figure(
                out_dir / "sweep_ecc.png",
                [record.eccentricity for record in sweep.records],
                sweep.normalized,
            )
        )
    return outputs


def _run_optimize(config, out_dir, render_figures):
    material = config.material
    constraint = config.constraint
    r_parallel = config.params["r_parallel_m"]
    xtol = config.params["xtol"]
    e_star, gamma_star = optimal_eccentricity(material, r_parallel, constraint, xtol)
    omega_rot = constrained_omega(r_parallel, constraint)
    header = _base_header(config) + [
        ("r_parallel_m", repr(r_parallel)),
        ("tip_speed_m_s", repr(constraint.tip_speed)),
        ("constraint_source", constraint.source),
        ("xtol", repr(xtol)),
    ]
    csv_path = _write_csv(
        out_dir / "optimize.csv",
        header,
        [
            "r_parallel_m",
            "tip_speed_m_s",
            "omega_rot_rad_s",
            "eccentricity_star",
            "gamma_star_per_s",
        ],
        [(r_parallel, constraint.tip_speed, omega_rot, e_star, gamma_star)],
    )
    print(f"e_star: {e_star!r}")
    print(f"gamma_star: {gamma_star!r} photons/s")
    return [csv_path]


_RUNNERS = {
    "spectrum": _run_spectrum,
    "rate": _run_rate,
    "enhancement": _run_enhancement,
    "sweep-size": _run_sweep_size,
    "sweep-ecc": _run_sweep_ecc,
    "optimize": _run_optimize,
}


def execute(config, out_dir=None, render_figures=True):
    """Run one validated config; returns the manifest path."""
    target = Path(out_dir) if out_dir else Path(config.out_dir or "out")
    target.mkdir(parents=True, exist_ok=True)
    outputs = _RUNNERS[config.command](config, target, render_figures)
    manifest_path = _write_manifest(
        target, config, [path.name for path in outputs]
    )
    for path in outputs:
        print(f"wrote {path}")
    print(f"wrote {manifest_path}")
    return manifest_path


# ------------------------------------------------------------- validation

_VALIDATION_REFERENCES = {
    # published point values this build is reconciled against
    "sio2_rate_per_s": 2.5e-21,
    "bst_coefficient": 2.0e-44,
    "crossover_m": 26e-6,
}


def validation_report(out_dir=None):
    """Compute the three published anchor values and report the ratios.

    The report documents, it does not gate: it always succeeds, and the
    ratio column is the reconciliation record for the unit ambiguities
    discussed in the README.
    """
    target = Path(out_dir) if out_dir else Path("out")
    target.mkdir(parents=True, exist_ok=True)
    lines = []
    push = lines.append

    push("validation report")
    push(f"code_version: {__version__}")
    push(f"constants_version: {CONSTANTS_VERSION}")
    push("")

    # row 1: quasi-static rate of a constant-permittivity spheroid
    sio2 = ConstantPermittivity(eps_static=3.9)
    geom = SpheroidGeometry(r_parallel=150e-9, eccentricity=math.sqrt(3.0) / 2.0)
    spin = SpinConfiguration(omega_rot=2.0 * math.pi * 5.2e9)
    computed = quasistatic_rate(geom, sio2, spin)
    reference = _VALIDATION_REFERENCES["sio2_rate_per_s"]
    push("row 1: quasi-static rate, eps=3.9, r_parallel=150 nm = 2*r_perp,")
    push("       rotation frequency 5.2 GHz (omega_rot = 2*pi*5.2e9 rad/s)")
    push(f"  computed:  {computed!r} photons/s")
    push(f"  reference: {reference!r} photons/s (published estimate)")
    push(f"  ratio computed/reference: {computed / reference!r}")
    push("")

    # row 2: dispersive coefficient K in Gamma_qs = K * g^7, under both
    # readings of the published "g = Omega[GHz]" axis
    bst = LorentzPermittivity(
        eps_uv=2.896, eps_static=7.1, omega_T=5.7e9, gamma=2.8e8
    )
    reference = _VALIDATION_REFERENCES["bst_coefficient"]
    push("row 2: quasi-static coefficient K with Gamma_qs = K * g^7 for the")
    push("       dispersive preset (eps_uv=2.896, eps_static=7.1,")
    push("       omega_T=5.7e9 rad/s, gamma=2.8e8 1/s), same geometry")
    k_angular = quasistatic_rate(
        geom, bst, SpinConfiguration(omega_rot=1e9)
    )
    k_cyclic = quasistatic_rate(
        geom, bst, SpinConfiguration(omega_rot=2.0 * math.pi * 1e9)
    )
    push("  reading A, g = omega_rot / (1e9 rad/s):")
    push(f"    computed K: {k_angular!r}")
    push(f"    ratio to reference {reference!r}: {k_angular / reference!r}")
    push("  reading B, g = rotation frequency / GHz (omega_rot = 2*pi*1e9*g):")
    push(f"    computed K: {k_cyclic!r}")
    push(f"    ratio to reference {reference!r}: {k_cyclic / reference!r}")
    push("")

    # row 3: plateau-to-tail crossover size at the published tip speed
    tip_speed = 1.5e5
    computed_crossover = tip_speed / bst.omega_T
    reference_crossover = _VALIDATION_REFERENCES["crossover_m"]
    push("row 3: analytic crossover tip_speed/omega_T at tip_speed=1.5e5 m/s")
    push(f"  computed:  {computed_crossover!r} m")
    push(f"  reference: {reference_crossover!r} m (published estimate)")
    push(
        "  ratio computed/reference: "
        f"{computed_crossover / reference_crossover!r}"
    )
    push("")

    norm = calibrate_normalization()
    push("conventions")
    push(
        "  vacuum normalization kappa: calibrated "
        f"{norm.kappa!r}, closed form 1/6 "
        f"(difference {abs(norm.kappa - 1.0 / 6.0)!r})"
    )
    push(
        "  anisotropy convention: Delta is half the difference of the "
        "principal polarizabilities"
    )
    push(
        "  spectral prefactor: 1/(144*pi^3*c^6*eps0^2) together with the "
        "half-difference Delta; the pipeline oracle and the quasi-static "
        "closed form are mutually consistent under this pairing"
    )

    text = "\n".join(lines) + "\n"
    report_path = target / "validation_report.txt"
    with open(report_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    print(text, end="")
    manifest_path = _write_manifest(target, None, [report_path.name])
    print(f"wrote {report_path}")
    print(f"wrote {manifest_path}")
    return report_path


# ------------------------------------------------------------------ main


def _exit_code(exc):
    for cls, code in _EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spindce",
        description=(
            "photon emission of a spinning anisotropic dielectric "
            "nanoparticle: spectra, rates, and constrained geometry studies"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "tabulate the emission spectral density",
        "rate": "total emission rate, quasi-static baseline, enhancement",
        "enhancement": "enhancement versus rotation frequency",
        "sweep-size": "rate versus size at fixed tip speed",
        "sweep-ecc": "rate versus eccentricity at fixed tip speed",
        "optimize": "eccentricity maximizing the rate at fixed tip speed",
    }
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=helps[name])
        cmd.add_argument("--config", required=True, help="JSON config file")
        cmd.add_argument("--out", default=None, help="output directory")
        cmd.add_argument(
            "--no-figures", action="store_true", help="skip PNG rendering"
        )
    validate = sub.add_parser(
        "validate", help="report computed values against the published anchors"
    )
    validate.add_argument(
        "--config", default=None, help="ignored; validate uses built-in presets"
    )
    validate.add_argument("--out", default=None, help="output directory")
    validate.add_argument("--no-figures", action="store_true", help="no effect")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            if args.config is not None:
                print("note: validate uses built-in presets; --config ignored")
            validation_report(args.out)
            return 0
        config = parse_config(args.config, args.command)
        execute(config, args.out, render_figures=not args.no_figures)
        return 0
    except SpindceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
