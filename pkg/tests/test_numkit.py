"""Dense linear-algebra layer: eigendecompositions, propagators, Gibbs
states, partial traces."""

import numpy as np
import pytest

from centralspin.numkit import (
    HermEigen,
    herm_eig,
    kron,
    partial_trace,
    propagator,
    thermal_state,
    unitary_evolution,
)


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def rk4_schrodinger(h, psi0, t, steps):
    """Fixed-step RK4 integration of d psi/dt = -i H psi."""
    psi = psi0.astype(complex)
    dt = t / steps
    for _ in range(steps):
        k1 = -1j * (h @ psi)
        k2 = -1j * (h @ (psi + 0.5 * dt * k1))
        k3 = -1j * (h @ (psi + 0.5 * dt * k2))
        k4 = -1j * (h @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return psi


def test_herm_eig_reconstructs_matrix():
    rng = np.random.default_rng(11)
    for dim in (2, 5, 9):
        h = random_hermitian(rng, dim)
        eig = herm_eig(h)
        assert eig.dim == dim
        assert np.all(np.diff(eig.eigenvalues) >= 0.0)
        rebuilt = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
        np.testing.assert_allclose(rebuilt, h, atol=1e-12)


def test_herm_eig_rejects_bad_input():
    with pytest.raises(ValueError):
        herm_eig(np.ones((2, 3)))
    with pytest.raises(ValueError):
        herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        herm_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_propagator_matches_rk4_integration():
    """exp(-iHt) applied to a state agrees with direct ODE integration."""
    rng = np.random.default_rng(23)
    for _ in range(4):
        dim = int(rng.integers(2, 7))
        h = random_hermitian(rng, dim)
        psi0 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        psi0 /= np.linalg.norm(psi0)
        t = float(rng.uniform(0.2, 1.5))
        expected = rk4_schrodinger(h, psi0, t, 4000)
        actual = propagator(herm_eig(h), t) @ psi0
        assert np.max(np.abs(actual - expected)) < 1e-6


def test_propagator_is_unitary_and_identity_at_zero():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 6)
    eig = herm_eig(h)
    np.testing.assert_allclose(propagator(eig, 0.0), np.eye(6), atol=1e-14)
    u = propagator(eig, 2.7)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)
    np.testing.assert_allclose(unitary_evolution(h, 2.7), u, atol=1e-12)


def test_thermal_state_limits_and_matrix_exponential():
    rng = np.random.default_rng(7)
    h = random_hermitian(rng, 5)
    eig = herm_eig(h)
    np.testing.assert_allclose(thermal_state(eig, 0.0), np.eye(5) / 5.0, atol=1e-14)
    # beta -> infinity reduces to the ground-state projector (spectrum is
    # non-degenerate for a random draw)
    ground = eig.eigenvectors[:, 0]
    np.testing.assert_allclose(thermal_state(eig, 1e8),
                               np.outer(ground, ground.conj()), atol=1e-10)
    beta = 0.8
    direct = np.zeros((5, 5), dtype=complex)
    for n in range(5):
        v = eig.eigenvectors[:, n]
        direct += np.exp(-beta * eig.eigenvalues[n]) * np.outer(v, v.conj())
    direct /= np.trace(direct)
    np.testing.assert_allclose(thermal_state(eig, beta), direct, atol=1e-12)
    with pytest.raises(ValueError):
        thermal_state(eig, -0.1)


def test_large_beta_does_not_overflow():
    eig = HermEigen(np.array([-1000.0, 1000.0]), np.eye(2, dtype=complex))
    rho = thermal_state(eig, 1e6)
    assert np.all(np.isfinite(rho))
    np.testing.assert_allclose(rho, np.diag([1.0, 0.0]), atol=1e-300)


def test_partial_trace_on_product_states():
    rng = np.random.default_rng(3)
    rho_a = random_density(rng, 3)
    rho_b = random_density(rng, 4)
    joint = kron(rho_a, rho_b)
    np.testing.assert_allclose(partial_trace(joint, (3, 4), "A"), rho_a, atol=1e-12)
    np.testing.assert_allclose(partial_trace(joint, (3, 4), "B"), rho_b, atol=1e-12)


def test_partial_trace_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(17)
    rho = random_density(rng, 12)
    for keep, dim in (("A", 3), ("B", 4)):
        red = partial_trace(rho, (3, 4), keep)
        assert red.shape == (dim, dim)
        assert abs(np.trace(red) - 1.0) < 1e-12
        assert np.max(np.abs(red - red.conj().T)) < 1e-12


def test_partial_trace_validates_arguments():
    rho = np.eye(6) / 6.0
    with pytest.raises(ValueError):
        partial_trace(rho, (4, 2), "A")  # 4*2 == 8 != 6
    with pytest.raises(ValueError):
        partial_trace(rho, (2, 3), "C")
