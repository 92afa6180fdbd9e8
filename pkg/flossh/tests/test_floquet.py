# 786
# Flossh source: test_floquet.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


import pytest  # noqa
import numpy as np

from flossh.common import ContractError, UnsupportedConfiguration
from flossh.lattice import ChainGeometry, static_spectrum
from flossh.drive import DriveSpec, DriveKind
from flossh.specfun import QuadratureSettings, bessel_j
from flossh.floquet import (
    FloquetMatrix,
    assemble,
    assemble_beating,
    assemble_monochromatic,
    assemble_numeric,
    diagonalize,
    effective_hamiltonian,
    effective_hoppings,
    fold,
    frame_propagator,
    h00_approx,
    population,
    propagate_one_period,
    propagator_quasienergies,
    replica_offsets,
    zone_distance,
    zone_quasienergies,
)
from flossh.sweep import sweep_g
from flossh.validate import J0_FIRST_ZERO, upper_cluster_width


def spectrum(h):
    return zone_quasienergies(diagonalize(h))


def assert_same_zone(a, b, omega, tol):
    dev = zone_distance(a, b, omega)
    assert dev < tol, f"zone distance {dev:.3e} >= {tol:.1e}"


def test_dimensions(mono):
    h = assemble_monochromatic(ChainGeometry(2, 0.3), mono(0.0), 0)
    assert h.dim == 4
    h = assemble_monochromatic(ChainGeometry(20, 0.3), mono(1.0), 20)
    assert h.dim == 1640
    assert h.block(-20, 20).shape == (40, 40)
    with pytest.raises(ContractError):
        h.block(21, 0)
    with pytest.raises(ContractError):
        assemble_monochromatic(ChainGeometry(2, 0.3), mono(1.0), -1)


def test_zero_coupling(mono):
    # Without the drive the replicas are shifted copies of the static spectrum
    geom = ChainGeometry(3, 0.3, 1.0, 0.4)
    sol = diagonalize(assemble_monochromatic(geom, mono(0.0), 2))
    static, _ = static_spectrum(geom)
    expected = np.sort(np.concatenate([static - m * 10.0 for m in range(-2, 3)]))
    assert np.allclose(sol.quasienergies, expected, atol=1e-12)
    central = np.sort(population(sol, "central"))
    assert np.allclose(central, [0.0] * 24 + [1.0] * 6, atol=1e-12)


def test_block_structure(small_chain, mono):
    h = assemble_monochromatic(small_chain, mono(2.0), 4)
    assert max(replica_offsets(h)) == 0.0
    diag = h.block(1, 1) - h.block(0, 0)
    assert np.allclose(diag, -10.0 * np.eye(8))
    # Off-diagonal hoppings follow v (-1)^n J_n(g′) and w J_n(g″)
    k1 = h.block(0, 1)
    assert abs(k1[0, 1] - 0.3 * (-1) * bessel_j(1, 1.2)) < 1e-15
    assert abs(k1[1, 0] - 0.3 * bessel_j(1, 1.2)) < 1e-15
    assert abs(k1[2, 1] - bessel_j(1, 0.8)) < 1e-15
    assert abs(k1[1, 2] + bessel_j(1, 0.8)) < 1e-15


def test_hermiticity(small_chain):
    for h in (
        assemble_monochromatic(small_chain, DriveSpec(DriveKind.MONOCHROMATIC, 2.5), 6),
        assemble_numeric(small_chain, DriveSpec(DriveKind.GAUSSIAN, 2.5, c=5.0), 6),
        assemble_beating(
            small_chain, DriveSpec(DriveKind.BEATING, 2.5, omega_env=5.0), 6
        ),
    ):
        assert h.hermiticity_defect() < 1e-12
    bad = FloquetMatrix(0, 10.0, 2, np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(ContractError):
        diagonalize(bad)


def test_numeric_matches_bessel(small_chain, mono):
    for g in (0.5, 2.0, 5.0):
        a = assemble_monochromatic(small_chain, mono(g), 20)
        b = assemble_numeric(small_chain, mono(g), 20, q=QuadratureSettings(1024))
        assert np.max(np.abs(a.matrix - b.matrix)) < 1e-9, g


def test_beating_matches_numeric(small_chain):
    for env in (5.0, 2.0):
        d = DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=env)
        a = assemble_beating(small_chain, d, 10)
        b = assemble_numeric(small_chain, d, 10)
        assert a.base_frequency == b.base_frequency == d.base_frequency
        assert np.max(np.abs(a.matrix - b.matrix)) < 1e-8, env


def test_beating_incommensurate(small_chain):
    d = DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=np.sqrt(2))
    with pytest.raises(UnsupportedConfiguration, match="assemble_numeric"):
        assemble_beating(small_chain, d, 4)
    with pytest.raises(UnsupportedConfiguration):
        assemble(small_chain, d, 4, "analytic")
    assert assemble(small_chain, d, 2, "numeric").dim == 40


def test_limits(small_chain, mono):
    ref = spectrum(assemble_monochromatic(small_chain, mono(2.0), 20))
    gauss = DriveSpec(DriveKind.GAUSSIAN, 2.0, 10.0, c=1e6)
    assert_same_zone(spectrum(assemble_numeric(small_chain, gauss, 20)), ref, 10, 1e-6)
    beat = DriveSpec(DriveKind.BEATING, 2.0, 10.0, omega_env=1e-7)
    assert_same_zone(spectrum(assemble_beating(small_chain, beat, 20)), ref, 10, 1e-6)


def test_slow_beating_blocks(small_chain, mono):
    # Envelope frequency 1e-8 Ω: the double Jacobi-Anger sum collapses to J_n
    beat = DriveSpec(DriveKind.BEATING, 2.0, 10.0, omega_env=1e-7)
    ref = assemble_monochromatic(small_chain, mono(2.0), 20)
    a = assemble_beating(small_chain, beat, 20)
    for n in range(-20, 21):
        assert np.max(np.abs(a.block(0, n) - ref.block(0, n))) < 1e-8, n
    b = assemble_numeric(small_chain, beat, 20, base_frequency=10.0)
    assert b.base_frequency == ref.base_frequency
    assert np.max(np.abs(b.matrix - ref.matrix)) < 1e-8


def test_slow_beating_sweep(small_chain):
    beat = DriveSpec(DriveKind.BEATING, 0.0, 10.0, omega_env=1e-7)
    result = sweep_g(small_chain, beat, [0.5, 1.0], 4, n_edge_cells=1, workers=1)
    assert not result.failures


def test_populations(small_chain, mono):
    sol = diagonalize(assemble_monochromatic(small_chain, mono(3.0), 8))
    assert sol.populations.shape == (8 * 17, 17)
    assert np.allclose(sol.populations.sum(axis=1), 1.0, atol=1e-10)
    central, peak = population(sol, "central"), population(sol, "max")
    assert np.all(peak >= central)
    assert np.all((central >= 0) & (central <= 1))
    with pytest.raises(ContractError):
        population(sol, "weighted")
    weights = sol.edge_weights(1)
    assert np.all((weights >= 0) & (weights <= 1 + 1e-12))


def test_first_zone(small_chain, mono):
    sol = diagonalize(assemble_monochromatic(small_chain, mono(2.0), 10))
    idx = sol.first_zone()
    assert len(idx) == 8
    eps = sol.quasienergies[idx]
    assert np.all((eps >= -5.0) & (eps < 5.0))


def test_chiral_pairing(mono):
    geom = ChainGeometry(4, 0.3, 1.0, 0.0)
    eps = spectrum(assemble_monochromatic(geom, mono(2.0), 20))
    assert_same_zone(eps, -eps, 10.0, 1e-8)


def test_gauge_invariance(small_chain, mono):
    a = spectrum(assemble_monochromatic(small_chain, mono(2.0), 20))
    b = spectrum(assemble_monochromatic(small_chain, mono(2.0, phase_offset=0.37), 20))
    assert_same_zone(a, b, 10.0, 1e-8)


def test_cutoff_stability(small_chain, mono):
    sets = []
    for M in (20, 25):
        eps = spectrum(assemble_monochromatic(small_chain, mono(8.0), M))
        sets.append(eps[np.abs(eps) < 2.5])
    assert len(sets[0]) == len(sets[1]) == 8
    assert_same_zone(sets[0], sets[1], 10.0, 1e-6)


@pytest.mark.parametrize("r", [0.0, 0.6])
@pytest.mark.parametrize("g", [1.0, 3.0])
def test_propagator(r, g, mono):
    geom = ChainGeometry(4, 0.3, 1.0, r)
    d = mono(g)
    eps = spectrum(assemble_monochromatic(geom, d, 20))
    u = propagate_one_period(geom, d, steps=20_000)
    assert_same_zone(propagator_quasienergies(u, d.base_period), eps, 10, 1e-6)
    # The frame transformation is periodic, so it keeps the eigenphases
    v = frame_propagator(geom, d, u, 0.0, d.base_period)
    assert_same_zone(propagator_quasienergies(v, d.base_period), eps, 10, 1e-6)


@pytest.mark.parametrize("r", [0.0, 0.6])
@pytest.mark.parametrize("env", [5.0, 2.0])
def test_beating_propagator(r, env):
    geom = ChainGeometry(4, 0.3, 1.0, r)
    d = DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=env)
    eps = spectrum(assemble_beating(geom, d, 20))
    u = propagate_one_period(geom, d, steps=40_000)
    omega = d.base_frequency
    assert_same_zone(propagator_quasienergies(u, d.base_period), eps, omega, 1e-6)


def test_propagator_errors(small_chain, mono):
    with pytest.raises(ContractError):
        propagate_one_period(small_chain, mono(1.0), steps=0)


def test_effective_hamiltonian(small_chain, mono):
    d = mono(2.0)
    h00 = h00_approx(small_chain, 2.0)
    assert np.allclose(effective_hamiltonian(small_chain, d), h00)
    # Long Gaussian pulses reduce to the monochromatic drive
    gauss = DriveSpec(DriveKind.GAUSSIAN, 2.0, 10.0, c=1e6)
    assert np.allclose(effective_hamiltonian(small_chain, gauss), h00, atol=1e-8)


def test_gaussian_lifts_hopping_zero(trivial_chain, mono):
    # J_0(r g) vanishes at the first zero of J_0; a Gaussian pulse keeps v_eff finite
    g = 2.404825557695773 / 0.6
    v_mono, w_mono = effective_hoppings(trivial_chain, mono(g))
    assert abs(v_mono) < 1e-9 and abs(w_mono) > 0.1
    v_gauss, _ = effective_hoppings(
        trivial_chain, DriveSpec(DriveKind.GAUSSIAN, g, 10.0, c=10.0)
    )
    assert abs(v_gauss) > 1e-3


def test_cluster_width_at_hopping_zero(trivial_chain, mono):
    # In the full Floquet spectrum the monochromatic cluster is already split
    # (~0.0099 w) and a c = 10 pulse does not widen it (~0.0086 w)
    g = J0_FIRST_ZERO / 0.6
    gauss = DriveSpec(DriveKind.GAUSSIAN, g, 10.0, c=10.0)
    widths = [upper_cluster_width(trivial_chain, d) for d in (mono(g), gauss)]
    assert 0.005 < widths[0] < 0.015, widths
    assert 0.004 < widths[1] < 0.013, widths
    assert widths[1] < 5 * widths[0]


def test_fold():
    assert fold(5.0, 10.0) == -5.0
    assert fold(-5.0, 10.0) == -5.0
    assert abs(fold(12.0, 10.0) - 2.0) < 1e-15
    assert np.allclose(fold([14.0, -6.0], 10.0), [4.0, 4.0])
    with pytest.raises(ContractError):
        fold(1.0, 0.0)
    assert abs(zone_distance([4.999], [-4.999], 10.0) - 0.002) < 1e-12
    assert zone_distance([], [], 10.0) == 0.0
    assert zone_distance([1.0], [], 10.0) == float("inf")
