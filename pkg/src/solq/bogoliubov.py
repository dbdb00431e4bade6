"""Bogoliubov excitations of the background condensate.

Dispersion and group velocity of the phonon reservoir, plus the local-density
mode functions around a soliton: plane waves dressed by soliton-shaped
envelopes. Wavenumbers are in 1/xi, energies in mu.
"""

from dataclasses import dataclass

import numpy as np

K_MIN = 1e-4  # below this the mode functions are numerically singular


def dispersion(k):
    """eps(k) = sqrt(k^2 (k^2 + 2)): phonon-like at small k, free at large k."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("dispersion expects k >= 0")
    return np.sqrt(k * k * (k * k + 2.0))


def group_velocity(k):
    """d eps/d k = 2 k (k^2 + 1)/eps(k); sound speed sqrt(2) at k -> 0."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0):
        raise ValueError("group_velocity expects k >= 0")
    eps = np.sqrt(k * k * (k * k + 2.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        vg = 2.0 * k * (k * k + 1.0) / eps
    return np.where(k == 0.0, np.sqrt(2.0), vg)


def resonant_wavevector(omega):
    """Invert the dispersion: the k with eps(k) = omega.

    Written as omega/sqrt(sqrt(1+omega^2)+1) rather than the textbook
    sqrt(sqrt(1+omega^2)-1), which loses all precision for omega << 1.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0):
        raise ValueError("resonant_wavevector expects omega >= 0")
    return omega / np.sqrt(np.sqrt(1.0 + omega * omega) + 1.0)


def group_velocity_at(omega):
    """Group velocity on shell, parameterized by the mode energy."""
    omega = np.asarray(omega, dtype=float)
    k = resonant_wavevector(omega)
    with np.errstate(invalid="ignore", divide="ignore"):
        vg = 2.0 * k * (k * k + 1.0) / omega
    return np.where(omega == 0.0, np.sqrt(2.0), vg)


@dataclass(frozen=True)
class BogoliubovMode:
    """u/v envelope pair of one reservoir mode around a soliton at `center`."""

    k: float
    center: float
    u: np.ndarray
    v: np.ndarray


def mode_amplitudes(k: float, x, center: float = 0.0) -> BogoliubovMode:
    """Local-density u_k, v_k profiles on the grid x.

    u_k(x) = e^{ik(x-c)} sqrt(1/4pi) (1/eps) [(k^2 + 2 eps)(k/2 + i tanh) + k sech^2],
    v_k(x) = e^{-ik(x-c)} sqrt(1/4pi) (1/eps) [(k^2 - 2 eps)(k/2 + i tanh) + k sech^2],

    with tanh/sech taken at x - c. These are envelope approximations: the
    pointwise normalization |u|^2 - |v|^2 = 1 holds only asymptotically, and
    that is all the package relies on.
    """
    k = float(k)
    if k <= 0.0:
        raise ValueError("mode_amplitudes needs k > 0 (k = 0 mode is singular)")
    if k < K_MIN:
        raise ValueError(f"k = {k} below the supported minimum {K_MIN}")
    x = np.asarray(x, dtype=float)
    y = x - center
    eps = float(dispersion(k))
    th = np.tanh(y)
    ssq = 1.0 / np.cosh(y) ** 2
    pref = np.sqrt(1.0 / (4.0 * np.pi)) / eps
    common = k / 2.0 + 1j * th
    u = np.exp(1j * k * y) * pref * ((k * k + 2.0 * eps) * common + k * ssq)
    v = np.exp(-1j * k * y) * pref * ((k * k - 2.0 * eps) * common + k * ssq)
    return BogoliubovMode(k=k, center=center, u=u, v=v)
