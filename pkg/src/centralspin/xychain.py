"""Free-fermion data for the XY bath ring.

After the Jordan-Wigner and Fourier transforms the ring separates into
momentum modes k = 2 pi m / N, m = -N/2+1 ... N/2.  Modes with k in {0, pi}
are their own Fourier partner ("unpaired"): they carry no pairing term, so
their single-fermion energy is the signed combination field - coupling*cos k
and the Bogoliubov angle degenerates to 0 or pi.  Every other mode pairs
with -k and is rotated by the angle nu_k below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ChainParams


@dataclass(frozen=True)
class MomentumMode:
    """One momentum mode of the bare bath chain.

    ``energy`` is the quasiparticle energy Lambda_k >= 0 and ``angle`` the
    Bogoliubov angle nu_k.  ``paired`` is False exactly for k in {0, pi}.
    """

    index: int
    k: float
    paired: bool
    energy: float
    angle: float


@dataclass(frozen=True)
class ShiftedModeData:
    """Mode data for the bath Hamiltonian branch seen by Dicke label m.

    ``theta`` is the relative Bogoliubov angle (mu_{m,k} - nu_k)/2 folded to
    (-pi/2, pi/2]; ``energy`` is the branch quasiparticle energy E_{m,k}.
    """

    m_dicke: float
    theta: float
    energy: float


def dispersion(p: ChainParams, k: object) -> np.ndarray | float:
    """Quasiparticle energy sqrt((h - J cos k)^2 + (J g sin k)^2).

    Accepts scalars or arrays of k.
    """
    k = np.asarray(k, dtype=float)
    out = np.hypot(p.field - p.coupling * np.cos(k),
                   p.coupling * p.anisotropy * np.sin(k))
    return out if out.ndim else float(out)


def bogoliubov_angle(p: ChainParams, k: object) -> np.ndarray | float:
    """Rotation angle nu_k = atan2(J g sin k, J cos k - h).

    At a gap closing both arguments vanish and the angle is defined as 0.
    """
    k = np.asarray(k, dtype=float)
    out = np.arctan2(p.coupling * p.anisotropy * np.sin(k),
                     p.coupling * np.cos(k) - p.field)
    return out if out.ndim else float(out)


def _fold_half_period(theta: float) -> float:
    # The factors depend on theta only through pi-periodic functions, so a
    # representative in (-pi/2, pi/2] is enough and keeps tests reproducible.
    folded = math.remainder(theta, math.pi)
    if folded <= -math.pi / 2:
        folded += math.pi
    return folded


def shifted_mode(p: ChainParams, eta: float, m_dicke: float, k: float) -> ShiftedModeData:
    """Branch-field mode data for Dicke label ``m_dicke``.

    The central spins shift the transverse field to h + 2 eta m; the branch
    energy and the relative angle against the bare chain follow from the same
    dispersion and atan2 convention as the unshifted mode.
    """
    h_eff = p.field + 2.0 * eta * m_dicke
    y = p.coupling * p.anisotropy * math.sin(k)
    energy = math.hypot(h_eff - p.coupling * math.cos(k), y)
    mu = math.atan2(y, p.coupling * math.cos(k) - h_eff)
    nu = float(bogoliubov_angle(p, k))
    return ShiftedModeData(m_dicke=float(m_dicke),
                           theta=_fold_half_period(0.5 * (mu - nu)),
                           energy=energy)


def momentum_grid(p: ChainParams) -> list[MomentumMode]:
    """All N momentum modes of the ring, in ascending m = -N/2+1 ... N/2."""
    n = p.n_sites
    modes = []
    for m in range(-n // 2 + 1, n // 2 + 1):
        k = 2.0 * math.pi * m / n
        paired = m != 0 and m != n // 2
        modes.append(MomentumMode(index=m, k=k, paired=paired,
                                  energy=float(dispersion(p, k)),
                                  angle=float(bogoliubov_angle(p, k))))
    return modes


def partition_function(p: ChainParams, beta: float) -> float:
    """Z = prod_k 2 cosh(beta Lambda_k / 2) over all N modes."""
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    energies = np.array([mode.energy for mode in momentum_grid(p)])
    return float(np.prod(2.0 * np.cosh(0.5 * beta * energies)))


def log_partition_function(p: ChainParams, beta: float) -> float:
    """log Z, overflow-safe for large beta or many sites."""
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    x = 0.5 * beta * np.array([mode.energy for mode in momentum_grid(p)])
    # log(2 cosh x) = x + log(1 + e^{-2x}) for x >= 0
    return float(np.sum(x + np.log1p(np.exp(-2.0 * x))))
