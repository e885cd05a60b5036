import math

import numpy as np
import pytest

from spindce.errors import InvalidArgumentError
from spindce.geometry import SpheroidGeometry, anisotropy, principal_polarizabilities
from spindce.materials import ConstantPermittivity, LorentzPermittivity
from spindce.rotation import (
    SpinConfiguration,
    mean_polarizability,
    principal_axis_anisotropy,
    sideband_tensors,
)

BST = LorentzPermittivity(eps_uv=2.896, eps_static=7.1, omega_T=5.7e9, gamma=2.8e8)
GEOM = SpheroidGeometry(r_parallel=150e-9, eccentricity=math.sqrt(3.0) / 2.0)
SPIN = SpinConfiguration(omega_rot=1.9 * BST.omega_T)

E_CO = np.array([1.0, 1.0j, 0.0]) / math.sqrt(2.0)
E_COUNTER = np.array([1.0, -1.0j, 0.0]) / math.sqrt(2.0)


def test_spin_validation():
    assert SpinConfiguration(omega_rot=0.0).omega_rot == 0.0
    with pytest.raises(InvalidArgumentError):
        SpinConfiguration(omega_rot=-1.0)
    with pytest.raises(InvalidArgumentError):
        SpinConfiguration(omega_rot=math.inf)


def test_sideband_scale_is_shifted_anisotropy():
    omega = 3.3e9
    response = sideband_tensors(GEOM, BST, omega, SPIN)
    delta_plus = anisotropy(GEOM, BST, omega + SPIN.omega_rot)
    delta_minus = anisotropy(GEOM, BST, omega - SPIN.omega_rot)
    assert response.alpha_plus[0, 0] == 0.5 * delta_plus
    assert response.alpha_minus[0, 0] == 0.5 * delta_minus
    assert response.alpha_plus[0, 1] == -0.5j * delta_plus
    assert response.alpha_minus[0, 1] == 0.5j * delta_minus
    # xx = -yy, zero z row and column
    for tensor in (response.alpha_plus, response.alpha_minus):
        assert tensor[1, 1] == -tensor[0, 0]
        assert np.all(tensor[2, :] == 0.0) and np.all(tensor[:, 2] == 0.0)


def test_sidebands_are_nilpotent():
    response = sideband_tensors(GEOM, BST, 2.1e9, SPIN)
    for tensor in (response.alpha_plus, response.alpha_minus):
        scale = np.max(np.abs(tensor)) ** 2
        assert np.max(np.abs(tensor @ tensor)) <= 1e-15 * scale


def test_circular_kernels():
    omega = 2.1e9
    response = sideband_tensors(GEOM, BST, omega, SPIN)
    scale_plus = np.max(np.abs(response.alpha_plus))
    scale_minus = np.max(np.abs(response.alpha_minus))
    assert np.max(np.abs(response.alpha_plus @ E_COUNTER)) <= 1e-15 * scale_plus
    assert np.max(np.abs(response.alpha_minus @ E_CO)) <= 1e-15 * scale_minus
    # each sideband swaps the surviving circular component
    delta_plus = anisotropy(GEOM, BST, omega + SPIN.omega_rot)
    delta_minus = anisotropy(GEOM, BST, omega - SPIN.omega_rot)
    assert np.allclose(response.alpha_plus @ E_CO, delta_plus * E_COUNTER)
    assert np.allclose(response.alpha_minus @ E_COUNTER, delta_minus * E_CO)


def test_mean_polarizability_is_shifted_average():
    omega = 4.2e9
    for sign in (1, -1):
        pol = principal_polarizabilities(
            GEOM, BST, omega + sign * SPIN.omega_rot
        )
        expected = 0.5 * (pol.alpha_parallel + pol.alpha_perp)
        assert mean_polarizability(GEOM, BST, omega, SPIN, sign) == expected
    with pytest.raises(InvalidArgumentError):
        mean_polarizability(GEOM, BST, omega, SPIN, 2)


def test_zero_spin_reconstructs_rest_frame_tensor():
    omega = 3.7e9
    still = SpinConfiguration(omega_rot=0.0)
    response = sideband_tensors(GEOM, BST, omega, still)
    total = response.alpha_0 + response.alpha_plus + response.alpha_minus
    pol = principal_polarizabilities(GEOM, BST, omega)
    expected = np.diag([pol.alpha_parallel, pol.alpha_perp, pol.alpha_perp])
    assert np.max(np.abs(total - expected)) <= 1e-14 * np.max(np.abs(expected))


def test_carrier_zz_is_unshifted_perp():
    response = sideband_tensors(GEOM, BST, 3.7e9, SPIN)
    pol = principal_polarizabilities(GEOM, BST, 3.7e9)
    assert response.alpha_0[2, 2] == pol.alpha_perp


def test_isotropic_particle_has_no_sidebands():
    sphere = SpheroidGeometry(r_parallel=150e-9, eccentricity=0.0)
    response = sideband_tensors(sphere, BST, 3.7e9, SPIN)
    assert np.all(response.alpha_plus == 0.0)
    assert np.all(response.alpha_minus == 0.0)
    # dispersion keeps the rotational Doppler shift visible in the carrier:
    # circular components respond at shifted frequencies even for a sphere
    scale = abs(response.alpha_0[0, 0])
    assert abs(response.alpha_0[0, 0] - response.alpha_0[1, 1]) < 1e-14 * scale
    assert abs(response.alpha_0[0, 1] + response.alpha_0[1, 0]) < 1e-14 * scale
    assert abs(response.alpha_0[0, 1]) > 0.0


def test_isotropic_dispersionless_carrier_is_scalar():
    sphere = SpheroidGeometry(r_parallel=150e-9, eccentricity=0.0)
    model = ConstantPermittivity(eps_static=3.9)
    response = sideband_tensors(sphere, model, 3.7e9, SPIN)
    pol = principal_polarizabilities(sphere, model, 3.7e9)
    assert np.all(response.alpha_plus == 0.0)
    assert np.all(response.alpha_minus == 0.0)
    expected = pol.alpha_perp * np.eye(3)
    assert np.max(np.abs(response.alpha_0 - expected)) == 0.0


def test_principal_axis_anisotropy_is_half_difference():
    assert principal_axis_anisotropy(5.0 + 1.0j, 1.0 - 1.0j) == 2.0 + 1.0j
    assert principal_axis_anisotropy(3.0, 3.0) == 0.0
