"""Headless figure rendering for the batch commands.

Every saver takes already-computed arrays, writes one PNG, and returns the
path; the CSV files remain the normative output and the plots exist for
quick visual inspection only.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGURE_DPI = 150
_FIGSIZE = (6.4, 4.2)

_RC = {
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
}


def _new_axes():
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=FIGURE_DPI)
    return fig, ax


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=FIGURE_DPI)
    plt.close(fig)
    return path


def spectrum_figure(path, omega, d_gamma, omega_rot):
    """Spectral density over the emission band, log scale when peaked."""
    with plt.rc_context(_RC):
        fig, ax = _new_axes()
        omega = np.asarray(omega, dtype=float)
        d_gamma = np.asarray(d_gamma, dtype=float)
        positive = d_gamma > 0.0
        spread = (
            d_gamma[positive].max() / d_gamma[positive].min()
            if np.any(positive)
            else 1.0
        )
        if np.any(positive) and spread > 1e3:
            ax.semilogy(omega[positive], d_gamma[positive], lw=1.0)
        else:
            ax.plot(omega, d_gamma, lw=1.0)
        ax.axvline(omega_rot, color="gray", lw=0.8, ls="--")
        ax.set_xlabel("emission frequency omega (rad/s)")
        ax.set_ylabel("dGamma/domega (photons s$^{-1}$ (rad/s)$^{-1}$)")
        ax.set_title("emission spectrum")
        return _save(fig, path)


def enhancement_figure(path, omega_rot, enhancement):
    with plt.rc_context(_RC):
        fig, ax = _new_axes()
        ax.loglog(omega_rot, enhancement, marker="o", ms=3, lw=1.0)
        ax.set_xlabel("rotation frequency Omega (rad/s)")
        ax.set_ylabel("Gamma / Gamma_qs")
        ax.set_title("resonant enhancement")
        return _save(fig, path)


def sweep_size_figure(path, r_parallel, gamma, crossover_m=None):
    with plt.rc_context(_RC):
        fig, ax = _new_axes()
        ax.loglog(np.asarray(r_parallel) * 1e6, gamma, marker="o", ms=3, lw=1.0)
        if crossover_m is not None:
            ax.axvline(
                crossover_m * 1e6,
                color="gray",
                lw=0.8,
                ls="--",
                label="analytic crossover",
            )
            ax.legend()
        ax.set_xlabel("major semi-axis r_parallel (um)")
        ax.set_ylabel("Gamma (photons/s)")
        ax.set_title("rate versus size at fixed tip speed")
        return _save(fig, path)


def sweep_ecc_figure(path, eccentricity, normalized):
    with plt.rc_context(_RC):
        fig, ax = _new_axes()
        ax.plot(eccentricity, normalized, marker="o", ms=3, lw=1.0)
        ax.set_xlabel("eccentricity")
        ax.set_ylabel("Gamma / max Gamma")
        ax.set_ylim(bottom=0.0)
        ax.set_title("rate versus shape at fixed tip speed")
        return _save(fig, path)
