"""Prolate spheroid shape, depolarization factors, and polarizabilities.

A prolate spheroid with major semi-axis r_parallel along its symmetry axis
and minor semi-axes r_perp = r_parallel*sqrt(1 - e^2) responds to a uniform
field with principal polarizabilities

    alpha_i = 4*pi*eps0 * (r_parallel*r_perp^2/3) * (eps - 1) / (1 + N_i*(eps - 1))

where N_parallel and N_perp are the depolarization factors. The anisotropy
Delta = (alpha_parallel - alpha_perp)/2 is the single shape/material quantity
driving rotational photon emission; it vanishes for spheres and for eps = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .materials import CONSTANTS, permittivity

ECCENTRICITY_MAX = 0.999999
# Below this eccentricity the closed form (1-e^2)/e^3 * (atanh(e) - e) loses
# about 3*eps_machine/e^2 of relative accuracy to cancellation, so the power
# series is the accurate branch. At the switch point both branches agree to
# better than 1e-12.
SERIES_SWITCH = 0.05
_SERIES_TERM_CUTOFF = 1e-17
_ONE_THIRD = 1.0 / 3.0

_FOUR_PI_EPS0 = 4.0 * math.pi * CONSTANTS.eps0


@dataclass(frozen=True)
class SpheroidGeometry:
    """Prolate spheroid: major semi-axis r_parallel (m), eccentricity e."""

    r_parallel: float
    eccentricity: float

    def __post_init__(self):
        if not (math.isfinite(self.r_parallel) and self.r_parallel > 0):
            raise InvalidArgumentError(
                f"r_parallel must be positive, got {self.r_parallel!r}"
            )
        if not (
            math.isfinite(self.eccentricity)
            and 0.0 <= self.eccentricity <= ECCENTRICITY_MAX
        ):
            raise InvalidArgumentError(
                f"eccentricity must lie in [0, {ECCENTRICITY_MAX}], "
                f"got {self.eccentricity!r}"
            )

    @property
    def r_perp(self):
        """Minor semi-axis in m."""
        return self.r_parallel * math.sqrt(1.0 - self.eccentricity**2)


@dataclass(frozen=True)
class DepolarizationFactors:
    n_parallel: float
    n_perp: float


def depolarization_factors(e):
    """Depolarization factors of a prolate spheroid of eccentricity e.

    N_parallel = (1-e^2)/e^3 * (atanh(e) - e), N_perp = (1 - N_parallel)/2.
    For small e the equivalent series (1-e^2) * sum_k e^(2k)/(2k+3) avoids
    the cancellation in atanh(e) - e.

    Returns
    -------
    DepolarizationFactors
        n_parallel in (0, 1/3], n_perp in [1/3, 1/2).
    """
    if not (isinstance(e, (int, float)) and math.isfinite(e)):
        raise InvalidArgumentError(f"eccentricity must be a finite number, got {e!r}")
    if e < 0.0 or e > ECCENTRICITY_MAX:
        raise InvalidArgumentError(
            f"eccentricity must lie in [0, {ECCENTRICITY_MAX}], got {e}"
        )
    if e == 0.0:
        return DepolarizationFactors(_ONE_THIRD, _ONE_THIRD)
    if e < SERIES_SWITCH:
        total = 0.0
        k = 0
        while True:
            term = e ** (2 * k) / (2 * k + 3)
            if term < _SERIES_TERM_CUTOFF:
                break
            total += term
            k += 1
        n_par = (1.0 - e * e) * total
    else:
        n_par = (1.0 - e * e) / e**3 * (math.atanh(e) - e)
    return DepolarizationFactors(n_par, 0.5 * (1.0 - n_par))


@dataclass(frozen=True)
class PrincipalPolarizability:
    """Polarizabilities along and across the symmetry axis (SI, F m^2)."""

    alpha_parallel: complex
    alpha_perp: complex


def principal_polarizabilities(geom, model, omega):
    """Principal polarizabilities of the spheroid at angular frequency omega.

    Parameters
    ----------
    geom : SpheroidGeometry
    model : dielectric model accepted by materials.permittivity
    omega : float or ndarray, rad/s

    Returns
    -------
    PrincipalPolarizability
        Complex alpha_parallel and alpha_perp in F m^2 (arrays for array
        input). (alpha_parallel - alpha_perp)/2 equals anisotropy().
    """
    eps = permittivity(model, omega)
    factors = depolarization_factors(geom.eccentricity)
    volume_term = geom.r_parallel * geom.r_perp**2 / 3.0
    chi = eps - 1.0
    a_par = _FOUR_PI_EPS0 * volume_term * chi / (1.0 + factors.n_parallel * chi)
    a_perp = _FOUR_PI_EPS0 * volume_term * chi / (1.0 + factors.n_perp * chi)
    return PrincipalPolarizability(a_par, a_perp)


def anisotropy(geom, model, omega):
    """Anisotropy Delta(omega) = (alpha_parallel - alpha_perp)/2 in F m^2.

    Evaluated in the algebraically reduced form

        Delta = 4*pi*eps0 * r_parallel*r_perp^2
                * (1/N_par - 1/N_perp) * (eps-1)^2
                / (6 * (eps - 1 + 1/N_par) * (eps - 1 + 1/N_perp))

    which is identical to the half-difference of the principal
    polarizabilities. Accepts scalar or array omega.
    """
    eps = permittivity(model, omega)
    factors = depolarization_factors(geom.eccentricity)
    inv_par = 1.0 / factors.n_parallel
    inv_perp = 1.0 / factors.n_perp
    chi = eps - 1.0
    numerator = (inv_par - inv_perp) * chi * chi
    denominator = 6.0 * (chi + inv_par) * (chi + inv_perp)
    return _FOUR_PI_EPS0 * geom.r_parallel * geom.r_perp**2 * numerator / denominator


def polarizability_volume(alpha):
    """Polarizability volume alpha/(4*pi*eps0) in m^3, for readable output."""
    return alpha / _FOUR_PI_EPS0
