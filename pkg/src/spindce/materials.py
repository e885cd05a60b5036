"""Dielectric response models, physical constants, and mechanical data.

Constants ledger (CODATA 2018, SI units):

    c     299792458.0        m/s   speed of light (exact by definition)
    eps0  8.8541878128e-12   F/m   vacuum permittivity
    hbar  1.054571817e-34    J s   reduced Planck constant

Every formula in the package reads these numbers from CONSTANTS below; no
other module defines its own copies.

Sign convention: the single-resonance permittivity carries +i*omega*gamma in
its denominator. Only |Delta|^2 of the anisotropy enters any emission rate,
which is invariant under complex conjugation of eps, so the choice is
observable-neutral.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import (
    InvalidArgumentError,
    LosslessPoleError,
    MissingMechanicalDataError,
    ParseError,
    SchemaError,
    UnknownMaterialError,
)

CATALOG_ENV_VAR = "SPINDCE_CATALOG"


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed physical constants (SI)."""

    c: float
    eps0: float
    hbar: float


CONSTANTS = PhysicalConstants(
    c=299792458.0,
    eps0=8.8541878128e-12,
    hbar=1.054571817e-34,
)


@dataclass(frozen=True)
class ConstantPermittivity:
    """Dispersionless dielectric: eps(omega) = eps_static for all omega."""

    eps_static: float

    def __post_init__(self):
        if not (math.isfinite(self.eps_static) and self.eps_static >= 1.0):
            raise InvalidArgumentError(
                f"eps_static must be a finite number >= 1, got {self.eps_static!r}"
            )


@dataclass(frozen=True)
class LorentzPermittivity:
    """Single-resonance dielectric function.

    eps(omega) = eps_uv + (eps_static - eps_uv)
                 / (1 - (omega/omega_T)^2 + i*omega*gamma/omega_T^2)

    Parameters
    ----------
    eps_uv : float
        High-frequency permittivity, >= 1.
    eps_static : float
        Static permittivity, > eps_uv.
    omega_T : float
        Resonance angular frequency in rad/s, > 0.
    gamma : float
        Damping rate in 1/s, >= 0. gamma = 0 makes the resonance a pole.
    """

    eps_uv: float
    eps_static: float
    omega_T: float
    gamma: float

    def __post_init__(self):
        for name in ("eps_uv", "eps_static", "omega_T", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if self.eps_uv < 1.0:
            raise InvalidArgumentError(f"eps_uv must be >= 1, got {self.eps_uv}")
        if self.eps_static <= self.eps_uv:
            raise InvalidArgumentError(
                f"eps_static must exceed eps_uv, got {self.eps_static} <= {self.eps_uv}"
            )
        if self.omega_T <= 0.0:
            raise InvalidArgumentError(f"omega_T must be positive, got {self.omega_T}")
        if self.gamma < 0.0:
            raise InvalidArgumentError(f"gamma must be >= 0, got {self.gamma}")


DielectricModel = ConstantPermittivity | LorentzPermittivity


def permittivity(model, omega):
    """Complex relative permittivity at angular frequency omega.

    Parameters
    ----------
    model : ConstantPermittivity or LorentzPermittivity
    omega : float or ndarray
        Angular frequency in rad/s. Negative values are allowed and satisfy
        eps(-omega) = conj(eps(omega)).

    Returns
    -------
    complex or ndarray
        Scalar input gives a complex scalar, array input an array.

    Raises
    ------
    InvalidArgumentError
        For non-finite omega.
    LosslessPoleError
        For an undamped model evaluated exactly at |omega| = omega_T, where
        the permittivity is infinite.
    """
    w = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise InvalidArgumentError("omega must be finite")
    scalar = w.ndim == 0

    if isinstance(model, ConstantPermittivity):
        eps = np.full(w.shape, model.eps_static, dtype=complex)
        return complex(eps[()]) if scalar else eps

    x = w / model.omega_T
    denom = 1.0 - x * x + 1j * w * model.gamma / model.omega_T**2
    if np.any(denom == 0):
        raise LosslessPoleError(
            f"permittivity is infinite at |omega| = {model.omega_T} rad/s "
            "for an undamped resonance"
        )
    eps = model.eps_uv + (model.eps_static - model.eps_uv) / denom
    # the static value is returned exactly, not through (a - b) + b rounding
    eps = np.where(w == 0.0, complex(model.eps_static), eps)
    return complex(eps[()]) if scalar else eps


@dataclass(frozen=True)
class MaterialSpec:
    """Named material: dielectric response plus optional mechanical data.

    density (kg/m^3) and uts (Pa, ultimate tensile strength) feed the derived
    burst speed sqrt(uts/density); burst_speed_override (m/s) replaces it.
    """

    name: str
    dielectric: DielectricModel
    density: float | None = None
    uts: float | None = None
    burst_speed_override: float | None = None

    def __post_init__(self):
        if self.density is not None and not (
            math.isfinite(self.density) and self.density > 0
        ):
            raise InvalidArgumentError(f"density must be positive, got {self.density}")
        if self.uts is not None and not (math.isfinite(self.uts) and self.uts >= 0):
            raise InvalidArgumentError(f"uts must be >= 0, got {self.uts}")
        if self.burst_speed_override is not None and not (
            math.isfinite(self.burst_speed_override) and self.burst_speed_override > 0
        ):
            raise InvalidArgumentError(
                f"burst_speed_override must be positive, got {self.burst_speed_override}"
            )


def burst_speed(material):
    """Maximum rim speed the material sustains, in m/s.

    Returns the override when present, else sqrt(uts/density).
    """
    if material.burst_speed_override is not None:
        return material.burst_speed_override
    if material.uts is not None and material.density is not None:
        return math.sqrt(material.uts / material.density)
    raise MissingMechanicalDataError(
        f"material '{material.name}' has neither burst_speed_override "
        "nor both uts and density"
    )


_COMMON_KEYS = {"name", "model", "density_kg_m3", "uts_pa", "burst_speed_m_s"}
_CONSTANT_KEYS = _COMMON_KEYS | {"eps_static"}
_LORENTZ_KEYS = _COMMON_KEYS | {"eps_static", "eps_uv", "omega_T_rad_s", "gamma_hz"}


def material_from_entry(entry, where="material"):
    """Build a MaterialSpec from one catalog (or inline config) object.

    Unknown keys are rejected; required keys depend on the model variant.
    """
    if not isinstance(entry, dict):
        raise SchemaError(f"{where}: expected an object, got {type(entry).__name__}")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError(f"{where}: missing or empty 'name'")
    model = entry.get("model")
    if model == "constant":
        allowed = _CONSTANT_KEYS
    elif model == "lorentz":
        allowed = _LORENTZ_KEYS
    else:
        raise SchemaError(
            f"{where} '{name}': 'model' must be \"constant\" or \"lorentz\", got {model!r}"
        )
    for key in entry:
        if key not in allowed:
            raise SchemaError(f"{where} '{name}': unknown key '{key}'")
    required = {"eps_static"} if model == "constant" else {
        "eps_static", "eps_uv", "omega_T_rad_s", "gamma_hz"}
    for key in required:
        if key not in entry:
            raise SchemaError(f"{where} '{name}': missing key '{key}'")
    for key in entry:
        if key in ("name", "model"):
            continue
        value = entry[key]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaError(f"{where} '{name}': key '{key}' must be a number")

    if model == "constant":
        dielectric = ConstantPermittivity(eps_static=float(entry["eps_static"]))
    else:
        dielectric = LorentzPermittivity(
            eps_uv=float(entry["eps_uv"]),
            eps_static=float(entry["eps_static"]),
            omega_T=float(entry["omega_T_rad_s"]),
            gamma=float(entry["gamma_hz"]),
        )
    return MaterialSpec(
        name=name,
        dielectric=dielectric,
        density=float(entry["density_kg_m3"]) if "density_kg_m3" in entry else None,
        uts=float(entry["uts_pa"]) if "uts_pa" in entry else None,
        burst_speed_override=(
            float(entry["burst_speed_m_s"]) if "burst_speed_m_s" in entry else None
        ),
    )


def _default_catalog_path():
    override = os.environ.get(CATALOG_ENV_VAR)
    if override:
        return override
    return str(resources.files("spindce").joinpath("data/materials.json"))


def load_catalog(path=None):
    """Load a material catalog from JSON.

    Resolution order: explicit path, the SPINDCE_CATALOG environment
    variable, then the catalog shipped with the package. Returns a dict
    keyed by material name.
    """
    resolved = path if path is not None else _default_catalog_path()
    try:
        with open(resolved, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read catalog {resolved}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog {resolved} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise SchemaError("catalog root must be a JSON list of material objects")
    catalog = {}
    for entry in raw:
        spec = material_from_entry(entry, where="catalog material")
        if spec.name in catalog:
            raise SchemaError(f"duplicate material name '{spec.name}' in catalog")
        catalog[spec.name] = spec
    return catalog


def get_material(name, catalog=None):
    """Look up a material by name, loading the default catalog if needed."""
    if catalog is None:
        catalog = load_catalog()
    try:
        return catalog[name]
    except KeyError:
        known = ", ".join(sorted(catalog))
        raise UnknownMaterialError(
            f"material '{name}' not in catalog (known: {known})"
        ) from None
