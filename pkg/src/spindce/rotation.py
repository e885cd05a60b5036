"""Laboratory-frame polarizability of a spinning spheroid.

Conventions are fixed: the particle rotates about the laboratory z axis at
angular velocity Omega, with its symmetry axis in the rotation plane (along
x at t = 0). The induced dipole then obeys

    d(omega) = alpha_0(omega) E(omega)
               + alpha_plus(omega) E(omega + 2*Omega)
               + alpha_minus(omega) E(omega - 2*Omega)

so the response mixes field components offset by twice the rotation
frequency. The sideband tensors are rank-1 and nilpotent,

    alpha_pm(omega) = Delta(omega +- Omega)/2 * [[1, -+i, 0],
                                                 [-+i, -1, 0],
                                                 [0,   0,  0]]

and the carrier tensor alpha_0 is built from the mean polarizability
S_pm(omega) = [alpha_parallel(omega +- Omega) + alpha_perp(omega +- Omega)]/2
with an unshifted zz entry. alpha_0 does not feed photon emission, but it
must reconstruct the rest-frame tensor at Omega = 0, which is the cheapest
end-to-end check of this algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .geometry import anisotropy, principal_polarizabilities

_M_PLUS = np.array(
    [[1.0, -1.0j, 0.0], [-1.0j, -1.0, 0.0], [0.0, 0.0, 0.0]], dtype=complex
)
_M_MINUS = np.array(
    [[1.0, 1.0j, 0.0], [1.0j, -1.0, 0.0], [0.0, 0.0, 0.0]], dtype=complex
)


@dataclass(frozen=True)
class SpinConfiguration:
    """Rotation about z at angular velocity omega_rot >= 0 (rad/s)."""

    omega_rot: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_rot) and self.omega_rot >= 0.0):
            raise InvalidArgumentError(
                f"omega_rot must be >= 0, got {self.omega_rot!r}"
            )


@dataclass(frozen=True)
class SidebandResponse:
    """Carrier and sideband tensors (3x3 complex, F m^2) at one frequency."""

    alpha_0: np.ndarray
    alpha_plus: np.ndarray
    alpha_minus: np.ndarray
    omega: float


def mean_polarizability(geom, model, omega, spin, sign):
    """Mean polarizability S_pm(omega) at the Doppler-shifted frequency.

    sign = +1 gives S_plus, sign = -1 gives S_minus.
    """
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign!r}")
    shifted = omega + sign * spin.omega_rot
    pol = principal_polarizabilities(geom, model, shifted)
    return 0.5 * (pol.alpha_parallel + pol.alpha_perp)


def sideband_tensors(geom, model, omega, spin):
    """Carrier and sideband polarizability tensors at frequency omega.

    Returns a SidebandResponse whose alpha_plus and alpha_minus scale with
    the anisotropy at omega +- Omega and vanish for an isotropic particle.
    """
    delta_plus = anisotropy(geom, model, omega + spin.omega_rot)
    delta_minus = anisotropy(geom, model, omega - spin.omega_rot)
    alpha_plus = 0.5 * delta_plus * _M_PLUS
    alpha_minus = 0.5 * delta_minus * _M_MINUS

    s_plus = mean_polarizability(geom, model, omega, spin, +1)
    s_minus = mean_polarizability(geom, model, omega, spin, -1)
    zz = principal_polarizabilities(geom, model, omega).alpha_perp
    half_sum = 0.5 * (s_plus + s_minus)
    half_diff = 0.5 * (s_plus - s_minus)
    alpha_0 = np.array(
        [
            [half_sum, 1j * half_diff, 0.0],
            [-1j * half_diff, half_sum, 0.0],
            [0.0, 0.0, zz],
        ],
        dtype=complex,
    )
    return SidebandResponse(alpha_0, alpha_plus, alpha_minus, float(omega))


def principal_axis_anisotropy(alpha1, alpha2):
    """Half-difference (alpha1 - alpha2)/2 of two principal polarizabilities.

    For a general particle spinning about principal axis 3, this quantity
    replaces the spheroid anisotropy in every emission formula; it vanishes
    when the rotation axis is a symmetry axis.
    """
    return 0.5 * (alpha1 - alpha2)
