"""Fisher-information witness: matrix construction, optimization, depth
thresholds, time averaging."""

import numpy as np
import pytest

from centralspin.dicke import coherent_coeffs, collective_ops
from centralspin.qfi import (
    entanglement_depth,
    entanglement_report,
    gamma_matrix,
    max_qfi,
    producibility_bounds,
    time_average,
)


def random_pure_density(rng, dim):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj()), psi


def random_mixed_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def covariance_matrix(psi, ops):
    cov = np.empty((3, 3))
    generators = (ops.sx, ops.sy, ops.sz)
    means = [np.vdot(psi, s @ psi).real for s in generators]
    for a in range(3):
        for b in range(3):
            sab = np.vdot(psi, generators[a] @ generators[b] @ psi)
            cov[a, b] = 0.5 * (sab + np.conj(sab)).real - means[a] * means[b]
    return cov


def test_pure_state_gamma_is_four_times_covariance():
    rng = np.random.default_rng(73)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        ops = collective_ops(n)
        rho, psi = random_pure_density(rng, n + 1)
        gamma = gamma_matrix(rho, ops)
        np.testing.assert_allclose(gamma, 4.0 * covariance_matrix(psi, ops),
                                   atol=1e-9)


def test_coherent_state_reaches_shot_noise():
    """A product coherent state on the equator has max QFI exactly Nc."""
    for n in (1, 2, 6):
        ops = collective_ops(n)
        c = coherent_coeffs(n, np.pi / 2, 0.3)
        value, direction = max_qfi(gamma_matrix(np.outer(c, c.conj()), ops))
        assert value == pytest.approx(n, abs=1e-10)
        assert np.linalg.norm(direction) == pytest.approx(1.0, abs=1e-12)


def test_ghz_state_saturates_heisenberg_bound():
    for n in (2, 4, 6):
        ops = collective_ops(n)
        psi = np.zeros(n + 1, dtype=complex)
        psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
        value, _ = max_qfi(gamma_matrix(np.outer(psi, psi.conj()), ops))
        assert value == pytest.approx(n ** 2, abs=1e-9)
        assert entanglement_depth(value, n) == n


def test_maximally_mixed_state_carries_no_information():
    for n in (1, 3, 6):
        ops = collective_ops(n)
        gamma = gamma_matrix(np.eye(n + 1) / (n + 1.0), ops)
        np.testing.assert_allclose(gamma, 0.0, atol=1e-12)


def test_gamma_matrix_cutoff_is_stable():
    rng = np.random.default_rng(79)
    ops = collective_ops(5)
    rho = random_mixed_density(rng, 6)
    values = []
    for cutoff in (1e-10, 1e-12, 1e-14):
        values.append(max_qfi(gamma_matrix(rho, ops, pair_cutoff=cutoff))[0])
    assert max(values) - min(values) < 1e-6


def test_gamma_matrix_rejects_non_states():
    ops = collective_ops(2)
    with pytest.raises(ValueError):
        gamma_matrix(np.diag([0.9, 0.9, -0.8]).astype(complex), ops)


def test_producibility_bounds_table():
    assert producibility_bounds(6) == (
        (1, 6.0), (2, 12.0), (3, 18.0), (4, 20.0), (5, 26.0), (6, 36.0))
    assert producibility_bounds(1) == ((1, 1.0),)


def test_entanglement_depth_thresholds():
    assert entanglement_depth(5.9, 6) == 1
    assert entanglement_depth(6.0, 6) == 1  # strict inequality
    assert entanglement_depth(6.1, 6) == 2
    assert entanglement_depth(12.5, 6) == 3
    assert entanglement_depth(20.5, 6) == 5
    assert entanglement_depth(26.5, 6) == 6
    assert entanglement_depth(36.0, 6) == 6
    with pytest.raises(ValueError):
        entanglement_depth(1.0, 0)


def test_entanglement_report_fields_are_consistent():
    ops = collective_ops(4)
    psi = np.zeros(5, dtype=complex)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    report = entanglement_report(np.outer(psi, psi.conj()), ops)
    assert report.qfi == pytest.approx(16.0, abs=1e-9)
    assert report.depth == 4
    assert report.thresholds == producibility_bounds(4)
    assert report.direction.shape == (3,)


def test_time_average_requires_uniform_increasing_grid():
    ts = np.linspace(0.0, 5.0, 11)
    fs = np.sin(ts) + 2.0
    assert time_average(np.column_stack([ts, fs])) == pytest.approx(fs.mean())
    assert time_average([[1.0, 3.5]]) == 3.5
    with pytest.raises(ValueError):
        time_average(np.column_stack([ts ** 2, fs]))  # non-uniform
    with pytest.raises(ValueError):
        time_average(np.column_stack([ts[::-1], fs]))  # decreasing
    with pytest.raises(ValueError):
        time_average(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        time_average(np.zeros((3, 3)))
