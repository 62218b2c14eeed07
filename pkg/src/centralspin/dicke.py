"""Symmetric-sector (Dicke) states and collective operators.

Basis ordering throughout: ascending z label n = -j ... j with j = Nc/2, so
index p = 0 ... Nc corresponds to n = p - Nc/2 and Sz is diagonal ascending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .params import CavityParams, CentralParams, ChainParams

# Above this size the binomial amplitudes are accumulated in log space.
_DIRECT_BINOMIAL_LIMIT = 60


@dataclass(frozen=True)
class CollectiveOps:
    """Collective spin matrices on the (Nc+1)-dimensional symmetric sector."""

    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


def coherent_coeffs(n_spins: int, vartheta: float, varphi: float) -> np.ndarray:
    """Amplitudes of the spin-coherent state in the ascending-n Dicke basis.

    c_p = cos^(Nc-p)(vt/2) sin^p(vt/2) e^{-i p varphi} sqrt(C(Nc, p)) with
    p = n + Nc/2, normalized.  vartheta = 0 gives the lowest-weight state;
    large Nc is handled by log-gamma accumulation of the binomial weights.
    """
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    p = np.arange(n_spins + 1)
    cos_half = math.cos(0.5 * vartheta)
    sin_half = math.sin(0.5 * vartheta)
    if n_spins <= _DIRECT_BINOMIAL_LIMIT:
        weights = np.array([math.comb(n_spins, int(q)) for q in p], dtype=float)
        amp = (cos_half ** (n_spins - p)) * (sin_half ** p) * np.sqrt(weights)
    else:
        log_binom = 0.5 * (gammaln(n_spins + 1) - gammaln(p + 1)
                           - gammaln(n_spins - p + 1))
        with np.errstate(divide="ignore"):
            log_cos = np.where(cos_half != 0.0, np.log(np.abs(cos_half)), -np.inf)
            log_sin = np.where(sin_half != 0.0, np.log(np.abs(sin_half)), -np.inf)
        exponent = np.where(p < n_spins, (n_spins - p) * log_cos, 0.0) \
            + np.where(p > 0, p * log_sin, 0.0) + log_binom
        sign = np.sign(cos_half) ** (n_spins - p) * np.sign(sin_half) ** p
        amp = sign * np.exp(exponent - exponent.max())
    coeffs = amp * np.exp(-1j * p * varphi)
    norm = np.linalg.norm(coeffs)
    if norm == 0.0:
        raise ValueError("degenerate spin-coherent amplitudes")
    return coeffs / norm


def collective_ops(n_spins: int) -> CollectiveOps:
    """Sx, Sy, Sz for Nc spin-1/2 particles restricted to the symmetric sector."""
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    j = 0.5 * n_spins
    m = np.arange(n_spins + 1) - j
    # <m+1| S+ |m> = sqrt(j(j+1) - m(m+1)) on the ascending-m basis
    ladder = np.sqrt(j * (j + 1.0) - m[:-1] * (m[:-1] + 1.0))
    sp = np.zeros((n_spins + 1, n_spins + 1), dtype=complex)
    sp[np.arange(1, n_spins + 1), np.arange(n_spins)] = ladder
    sm = sp.conj().T
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    sz = np.diag(m.astype(complex))
    return CollectiveOps(sx=sx, sy=sy, sz=sz)


def map_cavity_to_central(cavity: CavityParams, n_spins: int,
                          beta: float = 0.0,
                          vartheta: float = math.pi / 2,
                          varphi: float = 0.0) -> tuple[CentralParams, ChainParams]:
    """Dispersive reduction of the cavity setup to the central-spin model.

    Adiabatic elimination of the mode maps photon-number states onto central
    spins with coupling eta = g^2/Delta and shifts the bath field to
    h = h0 - omega0 + eta*Nc.  Returns the central-spin parameters together
    with the shifted bath chain.
    """
    delta = cavity.detuning
    eta = cavity.g ** 2 / delta
    field = cavity.h0 - cavity.omega0 + eta * n_spins
    central = CentralParams(n_spins=n_spins, eta=eta, beta=beta,
                            vartheta=vartheta, varphi=varphi)
    return central, cavity.chain(field)
