"""Free-fermion mode data of the XY ring: grids, dispersion, Bogoliubov
angles, partition functions."""

import math

import numpy as np
import pytest

from centralspin.params import ChainParams
from centralspin.xychain import (
    bogoliubov_angle,
    dispersion,
    log_partition_function,
    momentum_grid,
    partition_function,
    shifted_mode,
)


def random_chain(rng, n_sites=None):
    if n_sites is None:
        n_sites = int(rng.choice([2, 4, 6, 8, 10]))
    return ChainParams(
        n_sites=n_sites,
        coupling=float(rng.uniform(0.3, 1.8)),
        anisotropy=float(rng.uniform(0.0, 1.0)),
        field=float(rng.uniform(-2.0, 2.0)),
    )


def test_momentum_grid_four_sites():
    grid = momentum_grid(ChainParams(n_sites=4))
    ks = [mode.k for mode in grid]
    np.testing.assert_allclose(ks, [-math.pi / 2, 0.0, math.pi / 2, math.pi])
    assert [mode.paired for mode in grid] == [True, False, True, False]
    assert [mode.index for mode in grid] == [-1, 0, 1, 2]


def test_momentum_grid_pairing_structure():
    grid = momentum_grid(ChainParams(n_sites=10))
    assert len(grid) == 10
    unpaired = [mode.k for mode in grid if not mode.paired]
    np.testing.assert_allclose(sorted(unpaired), [0.0, math.pi])
    paired = sorted(mode.k for mode in grid if mode.paired)
    # paired momenta come in +-k partners strictly inside (0, pi)
    assert len(paired) == 8
    np.testing.assert_allclose(paired, sorted(-k for k in paired))


def test_dispersion_known_cases():
    # gamma=1, h=0: the spectrum is flat at |coupling|
    chain = ChainParams(n_sites=8, coupling=1.3, anisotropy=1.0, field=0.0)
    ks = np.linspace(-math.pi, math.pi, 17)
    np.testing.assert_allclose(dispersion(chain, ks), 1.3, atol=1e-14)
    # critical Ising h = coupling: Lambda_k = 2 coupling |sin(k/2)|
    crit = ChainParams(n_sites=8, coupling=0.7, anisotropy=1.0, field=0.7)
    np.testing.assert_allclose(dispersion(crit, ks),
                               2.0 * 0.7 * np.abs(np.sin(0.5 * ks)), atol=1e-14)


def test_dispersion_isotropic_chain_is_signed_field_term():
    chain = ChainParams(n_sites=6, coupling=1.1, anisotropy=0.0, field=0.4)
    ks = np.linspace(-math.pi, math.pi, 13)
    np.testing.assert_allclose(dispersion(chain, ks),
                               np.abs(0.4 - 1.1 * np.cos(ks)), atol=1e-15)
    # and the Bogoliubov angle degenerates to 0 or pi
    angles = np.atleast_1d(bogoliubov_angle(chain, ks))
    assert np.all((np.abs(angles) < 1e-14) | (np.abs(np.abs(angles) - math.pi) < 1e-14))


def test_bogoliubov_angle_satisfies_defining_ratios():
    rng = np.random.default_rng(29)
    for _ in range(50):
        chain = random_chain(rng)
        k = float(rng.uniform(-math.pi, math.pi))
        lam = dispersion(chain, k)
        if lam < 1e-12:
            continue  # gap closing, angle is a convention there
        nu = bogoliubov_angle(chain, k)
        assert abs(lam * math.cos(nu) - (chain.coupling * math.cos(k) - chain.field)) < 1e-12
        assert abs(lam * math.sin(nu) - chain.coupling * chain.anisotropy * math.sin(k)) < 1e-12


def test_shifted_mode_energy_and_angle():
    rng = np.random.default_rng(31)
    for _ in range(50):
        chain = random_chain(rng)
        eta = float(rng.uniform(-1.5, 1.5))
        m = float(rng.integers(-3, 4)) / 2.0
        k = float(rng.uniform(-math.pi, math.pi))
        data = shifted_mode(chain, eta, m, k)
        shifted = chain.with_field(chain.field + 2.0 * eta * m)
        assert abs(data.energy - dispersion(shifted, k)) < 1e-12
        assert -math.pi / 2 < data.theta <= math.pi / 2
        # 2*theta + nu equals the shifted-field Bogoliubov angle modulo pi
        mu = 2.0 * data.theta + bogoliubov_angle(chain, k)
        y = chain.coupling * chain.anisotropy * math.sin(k)
        x = chain.coupling * math.cos(k) - shifted.field
        assert abs(math.sin(mu) * x - math.cos(mu) * y) < 1e-10


def test_shifted_mode_vanishes_without_coupling():
    chain = ChainParams(n_sites=6, coupling=0.9, anisotropy=0.6, field=0.3)
    for k in (0.7, -2.1, math.pi):
        data = shifted_mode(chain, 0.0, 1.5, k)
        assert data.theta == 0.0
        assert abs(data.energy - dispersion(chain, k)) < 1e-15


def test_partition_function_counts_states_at_infinite_temperature():
    for n in (2, 4, 8):
        chain = ChainParams(n_sites=n, coupling=1.2, anisotropy=0.4, field=0.9)
        assert partition_function(chain, 0.0) == pytest.approx(2.0 ** n, rel=1e-14)


def test_partition_function_two_sites_closed_form():
    # Modes k = 0, pi with energies |h - J| and |h + J|
    chain = ChainParams(n_sites=2, coupling=1.0, anisotropy=0.8, field=0.0)
    expected = 4.0 * math.cosh(0.5) ** 2
    assert partition_function(chain, 1.0) == pytest.approx(expected, rel=1e-14)


def test_log_partition_function_consistency_and_overflow_safety():
    rng = np.random.default_rng(37)
    for _ in range(20):
        chain = random_chain(rng)
        beta = float(rng.uniform(0.0, 4.0))
        assert log_partition_function(chain, beta) == pytest.approx(
            math.log(partition_function(chain, beta)), abs=1e-12)
    chain = ChainParams(n_sites=10, coupling=1.0, anisotropy=1.0, field=1.5)
    beta = 1e6
    energies = [mode.energy for mode in momentum_grid(chain)]
    assert log_partition_function(chain, beta) == pytest.approx(
        0.5 * beta * sum(energies), rel=1e-12)
    with pytest.raises(ValueError):
        partition_function(chain, -1.0)
