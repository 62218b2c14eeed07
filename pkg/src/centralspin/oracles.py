"""Independent dense-matrix ground truth.

Everything in this module is deliberately brute force: full 2^N spin
matrices, scipy.linalg.expm for the small traces, and no reuse of the
analytic mode formulas.  The closed-form reduced state, the free-fermion
spectra and the dispersive cavity reduction are all validated against these
constructions in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .numkit import HermEigen, herm_eig, kron, propagator, thermal_state
from .params import CavityParams, CentralParams, ChainParams
from .dicke import coherent_coeffs, collective_ops

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

MAX_CHAIN_SITES = 12
MAX_ORACLE_SITES = 10
LEAKAGE_TOL = 1e-6
_TRUNCATION_TOL = 1e-8

BOUNDARIES = ("periodic-fermion", "periodic-spin")


def _site_op(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """``op`` acting on ``site`` (0-based) of an ``n_sites`` ring."""
    out = np.eye(1, dtype=complex)
    for l in range(n_sites):
        out = kron(out, op if l == site else np.eye(2, dtype=complex))
    return out


def _bond(op: np.ndarray, i: int, j: int, n_sites: int) -> np.ndarray:
    return _site_op(op, i, n_sites) @ _site_op(op, j, n_sites)


def spin_chain_matrix(p: ChainParams, boundary: str = "periodic-fermion") -> np.ndarray:
    """Dense 2^N matrix of the XY ring.

    ``periodic-spin`` closes the ring with a plain spin bond; with
    ``periodic-fermion`` the closing bond is multiplied by minus the total
    parity, which makes the spectrum exactly the free-fermion mode sums
    {sum_k Lambda_k (n_k - 1/2)} on the ordinary momentum grid.
    """
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    n = p.n_sites
    if n > MAX_CHAIN_SITES:
        raise ValueError(f"n_sites={n} exceeds the dense chain cap {MAX_CHAIN_SITES}")
    lam, gam = p.coupling, p.anisotropy

    def bond_term(i: int, j: int) -> np.ndarray:
        return -0.25 * lam * ((1.0 + gam) * _bond(PAULI_X, i, j, n)
                              + (1.0 - gam) * _bond(PAULI_Y, i, j, n))

    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i in range(n - 1):
        h += bond_term(i, i + 1)
    for i in range(n):
        h -= 0.5 * p.field * _site_op(PAULI_Z, i, n)
    closing = bond_term(n - 1, 0)
    if boundary == "periodic-spin":
        h += closing
    else:
        parity = np.eye(1, dtype=complex)
        for _ in range(n):
            parity = kron(parity, PAULI_Z)
        h += -parity @ closing
    return h


class CentralSpinOracle:
    """Brute-force reduced state of the central spins.

    Evolves the full 2^N bath under each Dicke-branch Hamiltonian and traces
    the overlaps directly.  One eigendecomposition per branch field is shared
    across all requested times and temperatures.
    """

    def __init__(self, chain: ChainParams, central: CentralParams):
        if chain.n_sites > MAX_ORACLE_SITES:
            raise ValueError(
                f"n_sites={chain.n_sites} exceeds the oracle cap {MAX_ORACLE_SITES}")
        self.chain = chain
        self.central = central
        self.labels = central.dicke_labels()
        self.coeffs = coherent_coeffs(central.n_spins, central.vartheta,
                                      central.varphi)
        self._branch_eigs = [
            herm_eig(spin_chain_matrix(
                chain.with_field(chain.field + 2.0 * central.eta * m)))
            for m in self.labels
        ]
        self._bath_eig = herm_eig(spin_chain_matrix(chain))
        self._bath_cache: dict[float, np.ndarray] = {}

    def bath_state(self, beta: float) -> np.ndarray:
        if beta not in self._bath_cache:
            self._bath_cache[beta] = thermal_state(self._bath_eig, beta)
        return self._bath_cache[beta]

    def reduced_density(self, t: float, beta: float | None = None) -> np.ndarray:
        """rho_ij = c_i c_j^* Tr[e^{+i t H_j} e^{-i t H_i} rho_bath]."""
        rho_bath = self.bath_state(self.central.beta if beta is None else beta)
        props = [propagator(eig, t) for eig in self._branch_eigs]
        evolved = [u @ rho_bath for u in props]
        dim = self.labels.size
        rho = np.empty((dim, dim), dtype=complex)
        for i in range(dim):
            for j in range(dim):
                rho[i, j] = (self.coeffs[i] * np.conj(self.coeffs[j])
                             * np.sum(np.conj(props[j]) * evolved[i]))
        return rho


def central_reduced_oracle(chain: ChainParams, central: CentralParams,
                           t: float) -> np.ndarray:
    """One-shot brute-force reduced state (see CentralSpinOracle)."""
    return CentralSpinOracle(chain, central).reduced_density(t)


def _pair_block(chain: ChainParams, k: float, field: float) -> np.ndarray:
    # One (k, -k) fermion pair on the occupation basis (00, 01, 10, 11);
    # |11> = c_k^dag c_{-k}^dag |00>.
    xi = field - chain.coupling * math.cos(k)
    delta = chain.coupling * chain.anisotropy * math.sin(k)
    h = np.diag(np.array([-xi, 0.0, 0.0, xi], dtype=complex))
    h[3, 0] = -1j * delta
    h[0, 3] = 1j * delta
    return h


def pair_factor_oracle(chain: ChainParams, k: float, field_i: float,
                       field_j: float, beta: float, t: float) -> complex:
    """Tr[e^{+itH_j} e^{-itH_i} e^{-beta H0}] over one fermion pair."""
    h0 = _pair_block(chain, k, chain.field)
    hi = _pair_block(chain, k, field_i)
    hj = _pair_block(chain, k, field_j)
    return complex(np.trace(expm(1j * t * hj) @ expm(-1j * t * hi)
                            @ expm(-beta * h0)))


def unpaired_factor_oracle(chain: ChainParams, k: float, field_i: float,
                           field_j: float, beta: float, t: float) -> complex:
    """Same trace over a single self-conjugate mode (sin k = 0)."""
    def block(field: float) -> np.ndarray:
        w = field - chain.coupling * math.cos(k)
        return np.diag(np.array([-0.5 * w, 0.5 * w], dtype=complex))

    return complex(np.trace(expm(1j * t * block(field_j))
                            @ expm(-1j * t * block(field_i))
                            @ expm(-beta * block(chain.field))))


def coherent_fock_state(nbar: float, cutoff: int) -> np.ndarray:
    """Truncated coherent state with mean photon number ``nbar``.

    Raises ValueError when the truncated tail weight exceeds the tolerance.
    """
    n = np.arange(cutoff + 1)
    with np.errstate(divide="ignore"):
        log_amp = np.where(n > 0, 0.5 * (n * np.log(nbar if nbar > 0 else 1.0)), 0.0) \
            - 0.5 * nbar - 0.5 * gammaln(n + 1.0)
    amp = np.exp(log_amp)
    if nbar == 0.0:
        amp = np.zeros(cutoff + 1)
        amp[0] = 1.0
    tail = 1.0 - float(np.sum(amp ** 2))
    if tail > _TRUNCATION_TOL:
        raise ValueError(
            f"fock_cutoff={cutoff} truncates weight {tail:.3e} > {_TRUNCATION_TOL:.0e} "
            f"for nbar={nbar}")
    return (amp / np.linalg.norm(amp)).astype(complex)


def collective_spin_full(n_sites: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jx, Jy, Jz as sums of half Paulis on the full 2^N space."""
    jx = sum(_site_op(PAULI_X, l, n_sites) for l in range(n_sites)) * 0.5
    jy = sum(_site_op(PAULI_Y, l, n_sites) for l in range(n_sites)) * 0.5
    jz = sum(_site_op(PAULI_Z, l, n_sites) for l in range(n_sites)) * 0.5
    return jx, jy, jz


def tc_spin_coherent(n_sites: int, theta: float, phi: float,
                     sector: str = "full") -> np.ndarray:
    """Spin-coherent state of the ring spins, theta measured from +z.

    ``full`` returns the 2^N product state; ``symmetric`` its (N+1)-dim
    Dicke-sector amplitudes (ascending z label).
    """
    up = math.cos(0.5 * theta)
    down = math.sin(0.5 * theta) * np.exp(1j * phi)
    if sector == "full":
        site = np.array([up, down], dtype=complex)
        state = np.array([1.0], dtype=complex)
        for _ in range(n_sites):
            state = np.kron(state, site)
        return state
    if sector == "symmetric":
        p = np.arange(n_sites + 1)  # number of up spins = index in ascending-n basis
        weights = np.array([math.comb(n_sites, int(q)) for q in p], dtype=float)
        amp = np.sqrt(weights) * up ** p * down ** (n_sites - p)
        return (amp / np.linalg.norm(amp)).astype(complex)
    raise ValueError(f"sector must be 'full' or 'symmetric', got {sector!r}")


EFF_VARIANTS = ("original", "eff2", "eff3")


class CavityModel:
    """Driven-mode + ring-spin system on the truncated Fock space.

    ``sector='full'`` keeps all 2^N spin states (exact); ``'symmetric'``
    restricts the spins to the Dicke sector and drops the exchange term,
    which is only meaningful when that term is negligible.
    """

    def __init__(self, params: CavityParams, sector: str = "full"):
        if sector not in ("full", "symmetric"):
            raise ValueError(f"sector must be 'full' or 'symmetric', got {sector!r}")
        self.params = params
        self.sector = sector
        n = params.n_sites
        self.spin_dim = 2 ** n if sector == "full" else n + 1
        self.fock_dim = params.fock_cutoff + 1
        if self.spin_dim * self.fock_dim > 4096:
            raise ValueError(
                f"total dimension {self.spin_dim * self.fock_dim} exceeds 4096")
        if sector == "full":
            self.jx, self.jy, self.jz = collective_spin_full(n)
        else:
            ops = collective_ops(n)
            self.jx, self.jy, self.jz = ops.sx, ops.sy, ops.sz
        self.jp = self.jx + 1j * self.jy
        self.jm = self.jx - 1j * self.jy
        ladder = np.zeros((self.fock_dim, self.fock_dim), dtype=complex)
        ladder[np.arange(self.fock_dim - 1), np.arange(1, self.fock_dim)] = \
            np.sqrt(np.arange(1, self.fock_dim))
        self.a = ladder
        self.number = ladder.conj().T @ ladder
        self._eye_fock = np.eye(self.fock_dim, dtype=complex)
        self._eye_spin = np.eye(self.spin_dim, dtype=complex)

    def _chain(self, field: float) -> np.ndarray:
        if self.sector == "full":
            return spin_chain_matrix(self.params.chain(field), "periodic-spin")
        return -field * self.jz  # exchange dropped in the symmetric sector

    def hamiltonian(self, which: str = "original") -> np.ndarray:
        """Dense Hamiltonian on fock (x) spin.

        ``original`` is the exact exchange model; ``eff2`` its time-averaged
        dispersive reduction; ``eff3`` additionally drops the J+J- term.
        """
        p = self.params
        if which not in EFF_VARIANTS:
            raise ValueError(f"which must be one of {EFF_VARIANTS}, got {which!r}")
        if which == "original":
            return (p.omega0 * kron(self._eye_fock, self.jz)
                    + p.omega_a * kron(self.number, self._eye_spin)
                    + kron(self._eye_fock, self._chain(p.h0))
                    + p.g * (kron(self.a.conj().T, self.jm)
                             + kron(self.a, self.jp)))
        eta = p.g ** 2 / p.detuning
        h = kron(self._eye_fock, self._chain(p.h0 - p.omega0)) \
            + 2.0 * eta * kron(self.number, self.jz)
        if which == "eff2":
            h = h + eta * kron(self._eye_fock, self.jp @ self.jm)
        return h

    def initial_state(self) -> np.ndarray:
        """Coherent drive (x) spin-coherent ring state."""
        fock = coherent_fock_state(self.params.nbar, self.params.fock_cutoff)
        spin = tc_spin_coherent(self.params.n_sites, self.params.theta,
                                self.params.phi, self.sector)
        return np.kron(fock, spin)

    def top_fock_population(self, states: np.ndarray) -> float:
        """Largest combined population of the top two Fock levels.

        ``states`` has one column per time sample.
        """
        blocks = states.reshape(self.fock_dim, self.spin_dim, -1)
        pops = np.sum(np.abs(blocks[-2:]) ** 2, axis=(0, 1))
        return float(pops.max())

    def transverse_means(self, which: str,
                         ts: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        """<Jx>(t), <Jy>(t) and the cutoff monitor for one Hamiltonian."""
        eig = herm_eig(self.hamiltonian(which))
        comps = eig.eigenvectors.conj().T @ self.initial_state()
        phases = np.exp(-1j * np.outer(eig.eigenvalues, ts))
        states = eig.eigenvectors @ (phases * comps[:, None])
        blocks = states.reshape(self.fock_dim, self.spin_dim, -1)
        jx_blocks = np.einsum("ab,fbt->fat", self.jx, blocks)
        jy_blocks = np.einsum("ab,fbt->fat", self.jy, blocks)
        jx = np.real(np.sum(np.conj(blocks) * jx_blocks, axis=(0, 1)))
        jy = np.real(np.sum(np.conj(blocks) * jy_blocks, axis=(0, 1)))
        return jx, jy, self.top_fock_population(states)


@dataclass(frozen=True)
class DifferenceRatioResult:
    """Difference ratio K on a (time, angle) grid plus the cutoff monitor."""

    times: np.ndarray
    zetas: np.ndarray
    k: np.ndarray
    fock_leakage: float


def difference_ratio_scan(params: CavityParams, t_grid: object, zetas: object,
                          eff_variant: str = "eff3",
                          sector: str = "full") -> DifferenceRatioResult:
    """K(t, zeta) = 2(<J_zeta>_eff - <J_zeta>_exact)/N over a grid.

    Raises ValueError when either branch pushes more than LEAKAGE_TOL of
    population into the top two Fock levels.
    """
    if eff_variant not in ("eff2", "eff3"):
        raise ValueError(f"eff_variant must be 'eff2' or 'eff3', got {eff_variant!r}")
    ts = np.atleast_1d(np.asarray(t_grid, dtype=float))
    zs = np.atleast_1d(np.asarray(zetas, dtype=float))
    model = CavityModel(params, sector)
    jx_o, jy_o, leak_o = model.transverse_means("original", ts)
    jx_e, jy_e, leak_e = model.transverse_means(eff_variant, ts)
    leakage = max(leak_o, leak_e)
    if leakage >= LEAKAGE_TOL:
        raise ValueError(
            f"fock cutoff too small: top-level population {leakage:.3e} "
            f">= {LEAKAGE_TOL:.0e}")
    dx = (jx_e - jx_o)[:, None]
    dy = (jy_e - jy_o)[:, None]
    k = 2.0 * (dx * np.cos(zs)[None, :] + dy * np.sin(zs)[None, :]) / params.n_sites
    return DifferenceRatioResult(times=ts, zetas=zs, k=k, fock_leakage=leakage)


def difference_ratio(params: CavityParams, t_grid: object, zeta: float,
                     eff_variant: str = "eff3",
                     sector: str = "full") -> np.ndarray:
    """K(t) at a single measurement angle."""
    return difference_ratio_scan(params, t_grid, [zeta], eff_variant, sector).k[:, 0]
