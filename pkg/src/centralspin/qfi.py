"""Quantum Fisher information of the central spins and the multipartite
entanglement witness built on it.

The QFI matrix over the three collective generators is evaluated in the
eigenbasis of the state; optimizing the generator direction reduces to the
largest eigenvalue of that 3x3 matrix.  Values above the k-producible bounds
floor(Nc/l) l^2 + (Nc mod l)^2 witness entanglement depth l+1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dicke import CollectiveOps
from .reduced_state import repair_density

PAIR_CUTOFF = 1e-12
_IMAG_RESIDUE_TOL = 1e-10


@dataclass(frozen=True)
class EntanglementReport:
    """QFI witness summary: optimal value, direction, and witnessed depth.

    ``depth`` = 1 means no entanglement is witnessed; ``thresholds`` lists
    the k-producible bounds (l, bound) that the QFI is compared against.
    """

    qfi: float
    direction: np.ndarray
    depth: int
    thresholds: tuple[tuple[int, float], ...]


def gamma_matrix(rho: np.ndarray, ops: CollectiveOps,
                 pair_cutoff: float = PAIR_CUTOFF) -> np.ndarray:
    """3x3 QFI matrix over the generators (Sx, Sy, Sz).

    Gamma[a, b] = 2 sum_{mn} (p_m - p_n)^2 / (p_m + p_n) S^a_mn S^b_nm over
    eigenpairs of the state; pairs with p_m + p_n below ``pair_cutoff`` are
    skipped.  Raises ValueError for non-density-matrix input.
    """
    state = repair_density(rho)
    probs, basis = np.linalg.eigh(state)
    rotated = [basis.conj().T @ s @ basis for s in (ops.sx, ops.sy, ops.sz)]
    psum = probs[:, None] + probs[None, :]
    pdiff = probs[:, None] - probs[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        weight = np.where(psum >= pair_cutoff,
                          2.0 * pdiff ** 2 / np.where(psum > 0.0, psum, 1.0),
                          0.0)
    gamma = np.empty((3, 3), dtype=complex)
    for a in range(3):
        for b in range(a, 3):
            value = np.sum(weight * rotated[a] * np.conj(rotated[b]))
            gamma[a, b] = value
            gamma[b, a] = np.conj(value)
    residue = np.abs(gamma.imag).max()
    if residue > _IMAG_RESIDUE_TOL:
        raise ValueError(f"QFI matrix has imaginary residue {residue:.3e}")
    real = gamma.real
    return 0.5 * (real + real.T)


def max_qfi(gamma: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest QFI over generator directions and the optimal unit direction.

    The direction sign is fixed so its first component above rounding noise
    is positive.
    """
    arr = np.asarray(gamma, dtype=float)
    if arr.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {arr.shape}")
    vals, vecs = np.linalg.eigh(0.5 * (arr + arr.T))
    direction = vecs[:, -1].copy()
    for component in direction:
        if abs(component) > 1e-12:
            if component < 0.0:
                direction = -direction
            break
    return float(vals[-1]), direction


def producibility_bounds(n_spins: int) -> tuple[tuple[int, float], ...]:
    """k-producible QFI bounds (l, floor(Nc/l) l^2 + (Nc mod l)^2) for
    l = 1 ... Nc."""
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    bounds = []
    for l in range(1, n_spins + 1):
        s, r = divmod(n_spins, l)
        bounds.append((l, float(s * l * l + r * r)))
    return tuple(bounds)


def entanglement_depth(qfi: float, n_spins: int) -> int:
    """Smallest witnessed depth: 1 + the largest l whose bound is beaten."""
    depth = 1
    for l, bound in producibility_bounds(n_spins):
        if qfi > bound:
            depth = l + 1
    return depth


def entanglement_report(rho: np.ndarray, ops: CollectiveOps) -> EntanglementReport:
    """Full witness evaluation for one state."""
    value, direction = max_qfi(gamma_matrix(rho, ops))
    n_spins = ops.sz.shape[0] - 1
    if value > n_spins ** 2 + 1e-6:
        raise ValueError(
            f"QFI {value:.6f} exceeds the collective bound {n_spins ** 2}")
    return EntanglementReport(qfi=value, direction=direction,
                              depth=entanglement_depth(value, n_spins),
                              thresholds=producibility_bounds(n_spins))


def time_average(series: object) -> float:
    """Mean of F over a uniform, strictly increasing time grid.

    ``series`` holds (t, F) pairs; non-uniform spacing raises ValueError.
    """
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise ValueError("series must be a non-empty sequence of (t, F) pairs")
    if arr.shape[0] == 1:
        return float(arr[0, 1])
    steps = np.diff(arr[:, 0])
    if np.any(steps <= 0.0):
        raise ValueError("times must be strictly increasing")
    spread = steps.max() - steps.min()
    if spread > 1e-9 * max(steps.mean(), np.finfo(float).tiny):
        raise ValueError(f"time grid is not uniform: spacing spread {spread:.3e}")
    return float(arr[:, 1].mean())
