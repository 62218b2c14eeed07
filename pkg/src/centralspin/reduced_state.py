"""Closed-form reduced density matrix of the central spins.

Tracing the bath out of the dephasing evolution factorizes over momentum.
Each pair (k, -k) with k strictly inside (0, pi) contributes a four-state
bracket built from the amplitudes A, B, C below; the self-conjugate modes
k in {0, pi} contribute a two-state factor that depends on the *signed*
single-mode energies w_m = (h + 2 eta m) - J cos k, since there the pairing
term vanishes and all branch Hamiltonians share one fermion mode.

For numerical robustness every mode factor is divided by its diagonal
(i = j) value before entering the product, so each accumulated factor has
modulus <= 1 and nothing overflows at any temperature or chain length; the
partition function never appears explicitly and the populations come out as
exactly the initial |c_i|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dicke import coherent_coeffs
from .params import CentralParams, ChainParams
from .xychain import MomentumMode, ShiftedModeData, momentum_grid, shifted_mode

DENSITY_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-9


@dataclass(frozen=True)
class ABCFactors:
    """Single-mode overlap amplitudes at relative angle x and phase y."""

    a: complex
    b: complex
    c: float


def abc(x: float, y: float) -> ABCFactors:
    """A = e^{-iy} + 2i sin^2(x) sin(y), B = e^{-iy} + 2i cos^2(x) sin(y),
    C = sin(2x) sin(y).

    These satisfy |A|^2 + C^2 = |B|^2 + C^2 = 1 for all real x, y.
    """
    sin_y = np.sin(y)
    phase = np.exp(-1j * np.asarray(y, dtype=float))
    a = phase + 2j * np.sin(x) ** 2 * sin_y
    b = phase + 2j * np.cos(x) ** 2 * sin_y
    c = np.sin(2.0 * np.asarray(x, dtype=float)) * sin_y
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return ABCFactors(a=complex(a), b=complex(b), c=float(c))
    return ABCFactors(a=a, b=b, c=c)


def paired_factor(mode: MomentumMode, di: ShiftedModeData, dj: ShiftedModeData,
                  beta: float, t: float) -> complex:
    """Unnormalized four-state bracket of one (k, -k) pair.

    Equals (2 cosh(beta Lambda_k / 2))^2 on the diagonal di = dj, independent
    of time.
    """
    if not mode.paired:
        raise ValueError(f"mode k={mode.k} is unpaired")
    w = beta * mode.energy
    fi = abc(di.theta, di.energy * t)
    fj = abc(dj.theta, dj.energy * t)
    return (2.0 + 2.0 * np.cosh(w) * fi.c * fj.c
            + np.exp(w) * fj.a * np.conj(fi.a)
            + np.exp(-w) * fj.b * np.conj(fi.b))


def _signed_energy(nu: float, data: ShiftedModeData) -> float:
    # For sin k = 0 the branch angle mu = 2*theta + nu is 0 or pi, and the
    # signed single-mode energy is w = -E cos(mu).
    return -data.energy * np.cos(2.0 * data.theta + nu)


def unpaired_factor(mode: MomentumMode, di: ShiftedModeData, dj: ShiftedModeData,
                    beta: float, t: float) -> complex:
    """Two-state factor of a self-conjugate mode k in {0, pi}.

    Built from signed single-mode energies: flipping the field across zero
    exchanges the roles of the occupied and empty states, which the signed
    form tracks automatically.  Equals 2 cosh(beta Lambda_k / 2) on the
    diagonal.
    """
    if mode.paired:
        raise ValueError(f"mode k={mode.k} is paired")
    w0 = -mode.energy * np.cos(mode.angle)
    wi = _signed_energy(mode.angle, di)
    wj = _signed_energy(mode.angle, dj)
    half = 0.5 * (beta * w0 - 1j * t * (wj - wi))
    return complex(np.exp(half) + np.exp(-half))


def _branch_arrays(chain: ChainParams, central: CentralParams,
                   k: float) -> tuple[np.ndarray, np.ndarray]:
    labels = central.dicke_labels()
    data = [shifted_mode(chain, central.eta, m, k) for m in labels]
    energies = np.array([d.energy for d in data])
    thetas = np.array([d.theta for d in data])
    return energies, thetas


def _paired_block(mode: MomentumMode, energies: np.ndarray, thetas: np.ndarray,
                  beta: float, ts: np.ndarray) -> np.ndarray:
    # Normalized bracket over (t, i, j); all exponentials carry non-positive
    # arguments so the block is overflow-free for any beta.
    y = ts[:, None] * energies[None, :]
    sin_y = np.sin(y)
    phase = np.exp(-1j * y)
    a = phase + 2j * np.sin(thetas)[None, :] ** 2 * sin_y
    b = phase + 2j * np.cos(thetas)[None, :] ** 2 * sin_y
    c = np.sin(2.0 * thetas)[None, :] * sin_y
    e1 = np.exp(-beta * mode.energy)
    e2 = e1 * e1
    cc = c[:, :, None] * c[:, None, :]
    aa = a[:, None, :] * np.conj(a)[:, :, None]
    bb = b[:, None, :] * np.conj(b)[:, :, None]
    num = 2.0 * e1 + (1.0 + e2) * cc + aa + e2 * bb
    return num / (2.0 * e1 + 1.0 + e2)


def _unpaired_block(mode: MomentumMode, energies: np.ndarray, thetas: np.ndarray,
                    beta: float, ts: np.ndarray) -> np.ndarray:
    w = -energies * np.cos(2.0 * thetas + mode.angle)
    w0 = -mode.energy * np.cos(mode.angle)
    phase = np.exp(-0.5j * ts[:, None, None] * (w[None, None, :] - w[None, :, None]))
    x = 0.5 * beta * w0
    decay = np.exp(-2.0 * abs(x))
    if x >= 0.0:
        return (phase + decay * np.conj(phase)) / (1.0 + decay)
    return (decay * phase + np.conj(phase)) / (decay + 1.0)


def reduced_density_series(chain: ChainParams, central: CentralParams,
                           ts: object, validate: bool = False) -> np.ndarray:
    """Reduced state of the central spins at each time in ``ts``.

    Returns an array of shape (len(ts), Nc+1, Nc+1) in the ascending-n Dicke
    basis.  One pass over the momentum grid serves the whole time grid.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if ts.ndim != 1:
        raise ValueError("ts must be one-dimensional")
    dim = central.n_spins + 1
    coeffs = coherent_coeffs(central.n_spins, central.vartheta, central.varphi)
    rho = np.ones((ts.size, dim, dim), dtype=complex)
    rho *= (coeffs[:, None] * np.conj(coeffs)[None, :])[None, :, :]
    for mode in momentum_grid(chain):
        if mode.paired and mode.k < 0.0:
            continue  # each pair enters once, through its k > 0 member
        energies, thetas = _branch_arrays(chain, central, mode.k)
        if mode.paired:
            rho *= _paired_block(mode, energies, thetas, central.beta, ts)
        else:
            rho *= _unpaired_block(mode, energies, thetas, central.beta, ts)
    if validate:
        for snapshot in rho:
            assert_density_matrix(snapshot)
    return rho


def reduced_density(chain: ChainParams, central: CentralParams, t: float,
                    validate: bool = True) -> np.ndarray:
    """Reduced (Nc+1)x(Nc+1) state of the central spins at time ``t``."""
    return reduced_density_series(chain, central, [t], validate=validate)[0]


def assert_density_matrix(rho: np.ndarray, atol: float = DENSITY_ATOL) -> None:
    """Raise ValueError unless ``rho`` is Hermitian, unit-trace and PSD up to
    the eigenvalue floor."""
    arr = np.asarray(rho, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"state must be square, got shape {arr.shape}")
    defect = np.abs(arr - arr.conj().T).max()
    if defect > atol:
        raise ValueError(f"state is not Hermitian: defect {defect:.3e}")
    trace_err = abs(arr.trace() - 1.0)
    if trace_err > atol:
        raise ValueError(f"state trace deviates from 1 by {trace_err:.3e}")
    lowest = np.linalg.eigvalsh(0.5 * (arr + arr.conj().T)).min()
    if lowest < EIGENVALUE_FLOOR:
        raise ValueError(f"state has negative eigenvalue {lowest:.3e}")


def repair_density(rho: np.ndarray, atol: float = DENSITY_ATOL) -> np.ndarray:
    """Validate ``rho`` and clip rounding-level negative eigenvalues.

    Eigenvalues in [EIGENVALUE_FLOOR, 0) are set to zero and the spectrum is
    renormalized; anything below the floor raises ValueError.
    """
    assert_density_matrix(rho, atol=atol)
    arr = 0.5 * (np.asarray(rho, dtype=complex) + np.asarray(rho, dtype=complex).conj().T)
    vals, vecs = np.linalg.eigh(arr)
    if vals.min() >= 0.0:
        return arr
    clipped = np.clip(vals, 0.0, None)
    clipped /= clipped.sum()
    return (vecs * clipped) @ vecs.conj().T
