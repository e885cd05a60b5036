"""Photon emission spectrum and total rate of a spinning spheroid.

The rotating anisotropy converts vacuum fluctuations into photon pairs whose
frequencies sum to twice the rotation frequency. The spectral density is

    dGamma/domega = omega^3 (2 Omega - omega)^3 |Delta(omega - Omega)|^2
                    / (144 pi^3 c^6 eps0^2)

on 0 < omega < 2 Omega and zero outside. Integrating with a frequency
independent Delta gives the quasi-static rate

    Gamma_qs = 2 |Delta(0)|^2 Omega^7 / (315 pi^3 c^6 eps0^2)

used as the baseline when quoting resonant enhancement factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, LosslessResonanceCrossingError
from .geometry import SpheroidGeometry, anisotropy, depolarization_factors
from .materials import CONSTANTS, DielectricModel, LorentzPermittivity
from .quadrature import adaptive_quadrature
from .rotation import SpinConfiguration

RTOL_MIN = 1e-12
RTOL_MAX = 1e-3
RTOL_DEFAULT = 1e-8
MAX_PANELS_DEFAULT = 10000

_C6_EPS0_SQ = CONSTANTS.c**6 * CONSTANTS.eps0**2
SPECTRUM_PREFACTOR = 1.0 / (144.0 * math.pi**3 * _C6_EPS0_SQ)
QUASISTATIC_PREFACTOR = 2.0 / (315.0 * math.pi**3 * _C6_EPS0_SQ)

SECONDS_PER_YEAR = 365.25 * 86400.0


@dataclass(frozen=True)
class EmissionSpectrum:
    """Tabulated spectral density over the emission band [0, 2 Omega]."""

    omega_rot: float
    omega_grid: np.ndarray
    d_gamma: np.ndarray


@dataclass(frozen=True)
class RateResult:
    """Total rate, quasi-static baseline, and their ratio.

    enhancement is NaN when the baseline vanishes (isotropic particle or
    zero rotation frequency).
    """

    gamma_total: float
    gamma_qs: float
    enhancement: float
    abs_error_estimate: float
    function_evals: int


def _check_rtol(rtol):
    if not (RTOL_MIN <= rtol <= RTOL_MAX):
        raise InvalidArgumentError(
            f"rtol must lie in [{RTOL_MIN}, {RTOL_MAX}], got {rtol}"
        )


def _check_lossless_crossing(model, spin):
    # With zero damping the sideband argument omega - Omega sweeps across
    # the transverse pole whenever Omega exceeds omega_T, and the band
    # integral does not exist.
    if (
        isinstance(model, LorentzPermittivity)
        and model.gamma == 0.0
        and spin.omega_rot > model.omega_T
    ):
        raise LosslessResonanceCrossingError(
            "lossless dielectric: the emission band crosses the resonance at "
            f"omega_T = {model.omega_T!r} rad/s for omega_rot = "
            f"{spin.omega_rot!r} rad/s; a nonzero damping rate is required"
        )


def surface_mode_frequencies(geom: SpheroidGeometry, model: DielectricModel):
    """Frequencies where 1 + N (eps - 1) = 0 along each principal axis.

    These are the poles of the principal polarizabilities, hence the peaks
    of |Delta|. Returns (omega_parallel, omega_perp) for a Lorentz
    dielectric, or None when the model has no dispersion or the mode
    condition has no real root.
    """
    if not isinstance(model, LorentzPermittivity):
        return None
    factors = depolarization_factors(geom.eccentricity)
    out = []
    for n in (factors.n_parallel, factors.n_perp):
        denominator = model.eps_uv - 1.0 + 1.0 / n
        if denominator <= 0.0:
            return None
        ratio = 1.0 + (model.eps_static - model.eps_uv) / denominator
        if ratio <= 0.0:
            return None
        out.append(model.omega_T * math.sqrt(ratio))
    return tuple(out)


def spectrum_at(geom, model, spin, omega):
    """Spectral density dGamma/domega in photons / s / (rad/s).

    Accepts a scalar or ndarray of emission frequencies; points outside the
    open band (0, 2 Omega) contribute exactly zero.
    """
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    band_top = 2.0 * spin.omega_rot
    inside = (w > 0.0) & (w < band_top)
    density = np.zeros_like(w)
    if np.any(inside):
        w_in = w[inside]
        delta = anisotropy(geom, model, w_in - spin.omega_rot)
        density[inside] = (
            SPECTRUM_PREFACTOR
            * w_in**3
            * (band_top - w_in) ** 3
            * np.abs(delta) ** 2
        )
    if scalar:
        return float(density[0])
    return density


def quasistatic_rate(geom, model, spin):
    """Total rate for a frequency independent anisotropy pinned at Delta(0)."""
    delta0 = anisotropy(geom, model, 0.0)
    return QUASISTATIC_PREFACTOR * abs(delta0) ** 2 * spin.omega_rot**7


def _band_breakpoints(geom, model, spin):
    """Abscissae of known sharp features inside the open band."""
    band_top = 2.0 * spin.omega_rot
    points = {spin.omega_rot}
    if isinstance(model, LorentzPermittivity):
        shifts = [model.omega_T]
        modes = surface_mode_frequencies(geom, model)
        if modes is not None:
            shifts.extend(modes)
        for shift in shifts:
            points.add(spin.omega_rot - shift)
            points.add(spin.omega_rot + shift)
    return sorted(p for p in points if 0.0 < p < band_top)


def sample_spectrum(geom, model, spin, n_points=512):
    """Tabulate the spectral density on a grid that resolves its peaks.

    A uniform n_points grid over [0, 2 Omega] is merged with the sideband
    images of the transverse resonance and of both surface modes, so the
    narrow features survive plotting and CSV inspection.
    """
    if n_points < 16:
        raise InvalidArgumentError(f"need at least 16 grid points, got {n_points}")
    if spin.omega_rot <= 0.0:
        raise InvalidArgumentError("spectrum is empty at zero rotation frequency")
    _check_lossless_crossing(model, spin)
    band_top = 2.0 * spin.omega_rot
    grid = np.linspace(0.0, band_top, n_points)
    extras = _band_breakpoints(geom, model, spin)
    if isinstance(model, LorentzPermittivity) and model.gamma == 0.0:
        # the resonance images are poles, keep the plain grid plus midpoint
        extras = [spin.omega_rot]
    omega = np.unique(np.concatenate([grid, np.asarray(extras, dtype=float)]))
    return EmissionSpectrum(
        omega_rot=spin.omega_rot,
        omega_grid=omega,
        d_gamma=spectrum_at(geom, model, spin, omega),
    )


def total_rate(geom, model, spin, rtol=RTOL_DEFAULT, max_panels=MAX_PANELS_DEFAULT):
    """Integrate the spectral density over the emission band.

    Splits panels at the band midpoint and at every resonance image before
    adapting. Raises ConvergenceError (with the partial value and estimate
    attached) if the panel budget is exhausted first.
    """
    _check_rtol(rtol)
    if spin.omega_rot == 0.0:
        return RateResult(
            gamma_total=0.0,
            gamma_qs=0.0,
            enhancement=math.nan,
            abs_error_estimate=0.0,
            function_evals=0,
        )
    _check_lossless_crossing(model, spin)
    band_top = 2.0 * spin.omega_rot

    def integrand(w):
        return spectrum_at(geom, model, spin, w)

    quad = adaptive_quadrature(
        integrand,
        0.0,
        band_top,
        breakpoints=_band_breakpoints(geom, model, spin),
        rtol=rtol,
        max_panels=max_panels,
    )
    gamma_qs = quasistatic_rate(geom, model, spin)
    return RateResult(
        gamma_total=quad.value,
        gamma_qs=gamma_qs,
        enhancement=quad.value / gamma_qs if gamma_qs > 0.0 else math.nan,
        abs_error_estimate=quad.abs_error,
        function_evals=quad.n_evals,
    )


def enhancement_curve(
    geom, model, omega_rot_grid, rtol=RTOL_DEFAULT, max_panels=MAX_PANELS_DEFAULT
):
    """Enhancement factor on an ascending grid of rotation frequencies.

    Returns an (n, 2) array of (omega_rot, gamma_total/gamma_qs) rows.
    """
    grid = np.asarray(omega_rot_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidArgumentError("omega_rot_grid must be a non-empty 1-d array")
    if not np.all(grid > 0.0) or not np.all(np.diff(grid) > 0.0):
        raise InvalidArgumentError("omega_rot_grid must be positive and ascending")
    rows = np.empty((grid.size, 2))
    for i, omega_rot in enumerate(grid):
        spin = SpinConfiguration(omega_rot=float(omega_rot))
        result = total_rate(geom, model, spin, rtol=rtol, max_panels=max_panels)
        rows[i, 0] = omega_rot
        rows[i, 1] = result.enhancement
    return rows
