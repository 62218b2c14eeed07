"""Validated parameter bundles shared across the package.

All three bundles are frozen dataclasses: construction either succeeds with
finite, physically admissible values or raises ValueError immediately, so the
numerical layers never have to re-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


def _require_int(name: str, value: object) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ChainParams:
    """Bath ring of ``n_sites`` spins with XY exchange and a transverse field.

    ``coupling`` is the overall exchange strength, ``anisotropy`` in [0, 1]
    interpolates between the isotropic XX chain (0) and the Ising chain (1),
    and ``field`` is the uniform transverse field.
    """

    n_sites: int
    coupling: float = 1.0
    anisotropy: float = 1.0
    field: float = 0.0

    def __post_init__(self) -> None:
        n = _require_int("n_sites", self.n_sites)
        if n < 2 or n % 2 != 0:
            raise ValueError(f"n_sites must be an even integer >= 2, got {n}")
        object.__setattr__(self, "n_sites", n)
        _require_finite(coupling=self.coupling, anisotropy=self.anisotropy,
                        field=self.field)
        if not 0.0 <= self.anisotropy <= 1.0:
            raise ValueError(f"anisotropy must lie in [0, 1], got {self.anisotropy}")

    def with_field(self, field: float) -> "ChainParams":
        """Same chain with the transverse field replaced."""
        return replace(self, field=field)


@dataclass(frozen=True)
class CentralParams:
    """Central spins: count, bath coupling, bath temperature and the
    spin-coherent preparation angles.

    ``vartheta`` is measured from the -z axis, so ``vartheta = 0`` prepares
    the lowest-weight state and ``vartheta = pi/2`` an equatorial state.
    """

    n_spins: int
    eta: float
    beta: float
    vartheta: float = math.pi / 2
    varphi: float = 0.0

    def __post_init__(self) -> None:
        n = _require_int("n_spins", self.n_spins)
        if n < 1:
            raise ValueError(f"n_spins must be >= 1, got {n}")
        object.__setattr__(self, "n_spins", n)
        _require_finite(eta=self.eta, beta=self.beta, vartheta=self.vartheta,
                        varphi=self.varphi)
        if self.beta < 0.0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")

    def dicke_labels(self) -> np.ndarray:
        """Collective z labels m = -Nc/2 ... Nc/2 in ascending order."""
        n = self.n_spins
        return np.arange(n + 1) - n / 2.0


@dataclass(frozen=True)
class CavityParams:
    """Dispersive cavity setup: TC spins on a ring inside a driven mode.

    ``omega0`` (spin splitting), ``omega_a`` (mode frequency) and ``g``
    (exchange rate) are angular frequencies; ``nbar`` is the mean photon
    number of the coherent drive and ``fock_cutoff`` the truncation level.
    ``theta``/``phi`` orient the initial TC spin-coherent state and ``zeta``
    is the default in-plane measurement angle.
    """

    omega0: float
    omega_a: float
    g: float
    nbar: float
    fock_cutoff: int
    h0: float = 0.0
    coupling: float = 1.0
    anisotropy: float = 1.0
    n_sites: int = 4
    theta: float = math.pi / 2
    phi: float = 0.0
    zeta: float = math.pi / 6

    def __post_init__(self) -> None:
        _require_finite(omega0=self.omega0, omega_a=self.omega_a, g=self.g,
                        nbar=self.nbar, h0=self.h0, coupling=self.coupling,
                        anisotropy=self.anisotropy, theta=self.theta,
                        phi=self.phi, zeta=self.zeta)
        n = _require_int("n_sites", self.n_sites)
        if n < 2 or n % 2 != 0:
            raise ValueError(f"n_sites must be an even integer >= 2, got {n}")
        object.__setattr__(self, "n_sites", n)
        cutoff = _require_int("fock_cutoff", self.fock_cutoff)
        object.__setattr__(self, "fock_cutoff", cutoff)
        if self.nbar < 0.0:
            raise ValueError(f"nbar must be >= 0, got {self.nbar}")
        if cutoff < self.nbar + 6.0 * math.sqrt(self.nbar):
            raise ValueError(
                f"fock_cutoff={cutoff} too small for nbar={self.nbar}; "
                f"need at least nbar + 6*sqrt(nbar) = "
                f"{self.nbar + 6.0 * math.sqrt(self.nbar):.1f}")
        if self.detuning == 0.0:
            raise ValueError("detuning omega0 - h0 - omega_a must be nonzero")

    @property
    def detuning(self) -> float:
        """Dispersive detuning between the shifted spins and the mode."""
        return self.omega0 - self.h0 - self.omega_a

    def chain(self, field: float | None = None) -> ChainParams:
        """The bath ring seen by the TC spins, optionally with a shifted field."""
        return ChainParams(self.n_sites, self.coupling, self.anisotropy,
                           self.h0 if field is None else field)
