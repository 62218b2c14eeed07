"""Small dense linear-algebra layer used by every other module.

Everything funnels through one Hermitian eigendecomposition (`herm_eig`), so a
single factorization can be reused across a whole time grid of propagators or
several temperatures of Gibbs states.  Inputs are validated once here and
trusted downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DENSE_DIM = 4096
HERMITICITY_RTOL = 1e-9


@dataclass(frozen=True)
class HermEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    corresponding orthonormal columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _checked_square(a: object, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] > MAX_DENSE_DIM:
        raise ValueError(
            f"{name} dimension {arr.shape[0]} exceeds the dense cap {MAX_DENSE_DIM}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def herm_eig(h: object) -> HermEigen:
    """Validate Hermiticity, symmetrize, and diagonalize.

    Raises ValueError if the matrix is not square or deviates from its
    adjoint by more than HERMITICITY_RTOL relative to its largest entry.
    """
    a = _checked_square(h, "hamiltonian")
    scale = np.abs(a).max()
    if scale > 0.0:
        defect = np.abs(a - a.conj().T).max()
        if defect > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: defect {defect:.3e} exceeds "
                f"{HERMITICITY_RTOL:.0e} * scale {scale:.3e}")
    a = 0.5 * (a + a.conj().T)
    vals, vecs = np.linalg.eigh(a)
    return HermEigen(vals, vecs)


def propagator(eig: HermEigen, t: float) -> np.ndarray:
    """Unitary exp(-i H t) from a precomputed decomposition."""
    phases = np.exp(-1j * eig.eigenvalues * t)
    return (eig.eigenvectors * phases) @ eig.eigenvectors.conj().T


def unitary_evolution(h: object, t: float) -> np.ndarray:
    """Unitary exp(-i H t) for a Hermitian ``h``."""
    return propagator(herm_eig(h), t)


def thermal_state(eig: HermEigen, beta: float) -> np.ndarray:
    """Normalized Gibbs state exp(-beta H)/Z from a decomposition.

    The spectrum is shifted by the ground energy before exponentiating, so
    arbitrarily large beta never overflows.
    """
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    weights = np.exp(-beta * (eig.eigenvalues - eig.eigenvalues[0]))
    weights /= weights.sum()
    return (eig.eigenvectors * weights) @ eig.eigenvectors.conj().T


def kron(a: object, b: object) -> np.ndarray:
    """Complex Kronecker product."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: object, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite state on C^dA (x) C^dB.

    ``keep`` selects the surviving factor, 'A' (first) or 'B' (second).
    """
    arr = _checked_square(rho, "state")
    da, db = int(dims[0]), int(dims[1])
    if da * db != arr.shape[0]:
        raise ValueError(
            f"dims {da}x{db} do not factor dimension {arr.shape[0]}")
    blocks = arr.reshape(da, db, da, db)
    if keep == "A":
        return np.trace(blocks, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(blocks, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
