"""Parameter studies under a tip-speed (burst) constraint.

A spinning particle survives only while the rim speed stays below the
material burst speed v_b = sqrt(UTS / density), so the best achievable
rotation frequency at a given size is Omega = v_b / r_parallel. Everything
in this module saturates that bound: rate versus size at fixed
eccentricity, rate versus eccentricity at fixed size, the size where the
rate leaves its small-particle plateau, and the eccentricity that maximizes
the rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .emission import RTOL_DEFAULT, total_rate
from .errors import (
    DegenerateObjectiveError,
    FitError,
    InvalidArgumentError,
)
from .geometry import SpheroidGeometry
from .materials import LorentzPermittivity, MaterialSpec, burst_speed
from .rotation import SpinConfiguration

DEFAULT_R_GRID = np.geomspace(1e-6, 100e-6, 64)
DEFAULT_E_GRID = np.linspace(0.01, 0.99, 50)

# windows for the crossover fits, as multiples of the analytic scale v_b/omega_T
PLATEAU_WINDOW_FACTOR = 0.2
TAIL_WINDOW_FACTOR = 1.9
MIN_FIT_POINTS = 3
MIN_FIT_R_SQUARED = 0.9

XTOL_MIN = 1e-6
XTOL_MAX = 1e-2
XTOL_DEFAULT = 1e-4

_COARSE_SCAN_POINTS = 32
_ECC_SEARCH_MAX = 0.999
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

CONSTRAINT_SOURCES = ("material-derived", "override")


@dataclass(frozen=True)
class ConstraintSpec:
    """Tip-speed bound Omega * r_parallel <= tip_speed, always saturated."""

    tip_speed: float
    source: str

    def __post_init__(self):
        if self.source not in CONSTRAINT_SOURCES:
            raise InvalidArgumentError(
                f"constraint source must be one of {CONSTRAINT_SOURCES}, "
                f"got {self.source!r}"
            )
        if not (self.tip_speed >= 0.0 and math.isfinite(self.tip_speed)):
            raise InvalidArgumentError(
                f"tip speed must be finite and nonnegative, got {self.tip_speed!r}"
            )


def constraint_from_material(material: MaterialSpec) -> ConstraintSpec:
    """Constraint at the material burst speed sqrt(UTS / density)."""
    return ConstraintSpec(tip_speed=burst_speed(material), source="material-derived")


def override_constraint(tip_speed) -> ConstraintSpec:
    return ConstraintSpec(tip_speed=float(tip_speed), source="override")


@dataclass(frozen=True)
class SweepRecord:
    r_parallel: float
    eccentricity: float
    omega_rot: float
    gamma_total: float
    gamma_qs: float

    @property
    def enhancement(self):
        if self.gamma_qs > 0.0:
            return self.gamma_total / self.gamma_qs
        return math.nan


@dataclass(frozen=True)
class EccentricitySweep:
    """Rate versus eccentricity at fixed size, with a normalized column."""

    records: tuple
    normalized: np.ndarray
    argmax_index: int


@dataclass(frozen=True)
class CrossoverEstimate:
    """Analytic and fitted size where the plateau gives way to the 1/r tail.

    fitted_m is the abscissa where the measured curve first drops through
    the midline (in log space) between the fitted plateau level and the
    fitted descending asymptote. The raw intersection of the two fits is
    also reported; it sits well below the knee whenever resonant
    enhancement lifts the plateau above the extrapolated tail.
    """

    analytic_m: float
    fitted_m: float
    asymptote_intersection_m: float
    plateau_log_level: float
    tail_slope: float
    tail_intercept: float
    tail_r_squared: float


def constrained_omega(r_parallel, constraint: ConstraintSpec):
    """Largest admissible rotation frequency at the given size."""
    if not (r_parallel > 0.0):
        raise InvalidArgumentError(f"r_parallel must be positive, got {r_parallel!r}")
    return constraint.tip_speed / r_parallel


def _rate_at(material, r_parallel, eccentricity, constraint, rtol):
    omega_rot = constrained_omega(r_parallel, constraint)
    geom = SpheroidGeometry(r_parallel=float(r_parallel), eccentricity=float(eccentricity))
    spin = SpinConfiguration(omega_rot=omega_rot)
    result = total_rate(geom, material.dielectric, spin, rtol=rtol)
    return SweepRecord(
        r_parallel=float(r_parallel),
        eccentricity=float(eccentricity),
        omega_rot=omega_rot,
        gamma_total=result.gamma_total,
        gamma_qs=result.gamma_qs,
    )


def _check_grid(grid, name, *, low=None, high=None):
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be a non-empty finite 1-d array")
    if not np.all(np.diff(arr) > 0.0):
        raise InvalidArgumentError(f"{name} must be strictly ascending")
    if low is not None and arr[0] < low:
        raise InvalidArgumentError(f"{name} values must be >= {low}")
    if high is not None and arr[-1] > high:
        raise InvalidArgumentError(f"{name} values must be <= {high}")
    return arr


def sweep_size(material, eccentricity, r_grid, constraint, rtol=RTOL_DEFAULT):
    """Rate versus major semi-axis at Omega = tip_speed / r_parallel."""
    if r_grid is None:
        r_grid = DEFAULT_R_GRID
    arr = _check_grid(r_grid, "r_grid")
    if arr[0] <= 0.0:
        raise InvalidArgumentError("r_grid values must be positive")
    return [
        _rate_at(material, r, eccentricity, constraint, rtol) for r in arr
    ]


def sweep_eccentricity(material, r_parallel, constraint, e_grid, rtol=RTOL_DEFAULT):
    """Rate versus eccentricity at fixed size, normalized by its maximum.

    Ties in the maximum break toward smaller eccentricity; when the rate
    vanishes identically the normalized column is all zeros.
    """
    if e_grid is None:
        e_grid = DEFAULT_E_GRID
    arr = _check_grid(e_grid, "e_grid", low=0.0, high=_ECC_SEARCH_MAX)
    records = tuple(
        _rate_at(material, r_parallel, e, constraint, rtol) for e in arr
    )
    gamma = np.array([rec.gamma_total for rec in records])
    peak = float(gamma.max()) if gamma.size else 0.0
    normalized = gamma / peak if peak > 0.0 else np.zeros_like(gamma)
    return EccentricitySweep(
        records=records,
        normalized=normalized,
        argmax_index=int(np.argmax(gamma)),
    )


def _level_fit(y):
    return float(np.mean(y))


def _line_fit(x, y):
    x_mean = float(np.mean(x))
    y_mean = float(np.mean(y))
    sxx = float(np.sum((x - x_mean) ** 2))
    sxy = float(np.sum((x - x_mean) * (y - y_mean)))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    residual = y - (intercept + slope * x)
    ss_res = float(np.sum(residual**2))
    ss_tot = float(np.sum((y - y_mean) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return slope, intercept, r_squared


def crossover_radius(
    material,
    eccentricity,
    constraint,
    r_grid=None,
    rtol=RTOL_DEFAULT,
):
    """Locate the size where the rate leaves its small-particle plateau.

    The analytic reference is tip_speed / omega_T: below it the whole
    emission band stays above the resonance and the rate is size
    independent, above it the band drops below the resonance and the rate
    falls off as 1/r. The fitted estimate regresses the plateau level on
    r <= 0.2 * reference and the descending tail on r >= 1.9 * reference,
    then reports where the sweep first crosses the midline between them.
    """
    records = sweep_size(material, eccentricity, r_grid, constraint, rtol=rtol)
    return crossover_from_records(material, constraint, records)


def crossover_from_records(material, constraint, records):
    """Crossover fit on an already-computed size sweep."""
    if not isinstance(material.dielectric, LorentzPermittivity):
        raise InvalidArgumentError(
            "crossover is defined by the dielectric resonance; "
            f"material {material.name!r} has no dispersion"
        )
    analytic = constraint.tip_speed / material.dielectric.omega_T
    if not (analytic > 0.0):
        raise InvalidArgumentError("crossover requires a positive tip speed")
    r = np.array([rec.r_parallel for rec in records])
    gamma = np.array([rec.gamma_total for rec in records])
    if np.any(gamma <= 0.0):
        raise FitError(
            "crossover fit needs strictly positive rates across the grid"
        )
    x = np.log(r)
    y = np.log(gamma)

    plateau_mask = r <= PLATEAU_WINDOW_FACTOR * analytic
    tail_mask = r >= TAIL_WINDOW_FACTOR * analytic
    if int(plateau_mask.sum()) < MIN_FIT_POINTS or int(tail_mask.sum()) < MIN_FIT_POINTS:
        raise FitError(
            "sweep grid does not cover both asymptotic windows: "
            f"{int(plateau_mask.sum())} plateau and {int(tail_mask.sum())} "
            f"tail points around reference {analytic!r} m"
        )
    level = _level_fit(y[plateau_mask])
    slope, intercept, r_squared = _line_fit(x[tail_mask], y[tail_mask])
    if r_squared < MIN_FIT_R_SQUARED:
        raise FitError(
            f"tail regression R^2 = {r_squared!r} below {MIN_FIT_R_SQUARED}"
        )
    if slope >= 0.0:
        raise FitError(f"tail slope {slope!r} is not descending")

    midline = 0.5 * (level + intercept + slope * x)
    above = y > midline
    fitted = None
    for i in range(1, r.size):
        if above[i - 1] and not above[i]:
            d_prev = y[i - 1] - midline[i - 1]
            d_here = y[i] - midline[i]
            x_star = x[i - 1] + (x[i] - x[i - 1]) * d_prev / (d_prev - d_here)
            fitted = math.exp(x_star)
            break
    if fitted is None:
        raise FitError("sweep never drops through the plateau-tail midline")
    return CrossoverEstimate(
        analytic_m=analytic,
        fitted_m=fitted,
        asymptote_intersection_m=math.exp((level - intercept) / slope),
        plateau_log_level=level,
        tail_slope=slope,
        tail_intercept=intercept,
        tail_r_squared=r_squared,
    )


def optimal_eccentricity(material, r_parallel, constraint, xtol=XTOL_DEFAULT):
    """Maximize the rate over eccentricity at fixed size.

    A 32-point coarse scan of [0, 0.999] brackets the global maximum, then
    golden-section refinement narrows it to xtol. Returns the best
    evaluated point (e_star, gamma_star); ties break toward smaller
    eccentricity, and the whole search is deterministic.
    """
    if not (XTOL_MIN <= xtol <= XTOL_MAX):
        raise InvalidArgumentError(
            f"xtol must lie in [{XTOL_MIN}, {XTOL_MAX}], got {xtol!r}"
        )

    def gamma_at(e):
        return _rate_at(material, r_parallel, e, constraint, RTOL_DEFAULT).gamma_total

    best_e = None
    best_gamma = -math.inf

    def consider(e, gamma):
        nonlocal best_e, best_gamma
        if gamma > best_gamma or (gamma == best_gamma and e < best_e):
            best_e, best_gamma = e, gamma

    coarse = np.linspace(0.0, _ECC_SEARCH_MAX, _COARSE_SCAN_POINTS)
    values = np.empty_like(coarse)
    for i, e in enumerate(coarse):
        values[i] = gamma_at(float(e))
        consider(float(coarse[i]), float(values[i]))
    if best_gamma <= 0.0:
        raise DegenerateObjectiveError(
            "rate is nonpositive across the whole eccentricity scan; "
            "nothing to optimize"
        )
    peak = int(np.argmax(values))
    lo = float(coarse[max(peak - 1, 0)])
    hi = float(coarse[min(peak + 1, coarse.size - 1)])

    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    f_c = gamma_at(c)
    f_d = gamma_at(d)
    consider(c, f_c)
    consider(d, f_d)
    while hi - lo > xtol:
        if f_c >= f_d:
            hi, d, f_d = d, c, f_c
            c = hi - _INV_PHI * (hi - lo)
            f_c = gamma_at(c)
            consider(c, f_c)
        else:
            lo, c, f_c = c, d, f_d
            d = lo + _INV_PHI * (hi - lo)
            f_d = gamma_at(d)
            consider(d, f_d)
    return best_e, best_gamma
