# 786
# Flossh source: test_sweep.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


import pytest  # noqa
import numpy as np

from flossh.common import ContractError, DomainError
from flossh.lattice import ChainGeometry
from flossh.drive import DriveSpec, DriveKind
from flossh.floquet import assemble_monochromatic, diagonalize
from flossh.specfun import bessel_j
from flossh.sweep import (
    SweepResult,
    detect_edge_states,
    edge_transitions,
    phase_boundary,
    sweep_g,
    transition_edge_cells,
)


MONO = DriveSpec(DriveKind.MONOCHROMATIC, 0.0, 10.0)


def assert_edge_counts(geom, expected, M=4):
    grid = sorted(expected)
    result = sweep_g(geom, MONO, grid, M, workers=1)
    counts = dict(zip(result.g_grid, result.edge_counts))
    assert counts == expected, f"{geom}: {counts}"


def test_single_point():
    result = sweep_g(ChainGeometry(2, 0.3), MONO, [0.0], 0, n_edge_cells=1, workers=1)
    assert len(result.rows) == 4
    assert [r.state_index for r in result.rows] == [0, 1, 2, 3]
    assert not result.failures


def test_rows():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    result = sweep_g(geom, MONO, [0.0, 1.0, 2.0], 2, n_edge_cells=1, workers=1)
    assert len(result.rows) == 3 * 8 * 5
    assert result.g_grid == [0.0, 1.0, 2.0]
    for g in result.g_grid:
        eps = [r.quasienergy for r in result.at(g)]
        assert len(eps) == 40 and eps == sorted(eps)
        assert all(-5.0 <= e < 5.0 for e in eps)
    assert result.metadata["m_max"] == 2
    assert result.metadata["method"] == "analytic"
    assert result.metadata["geometry"] == str(geom)


def test_unfolded_and_effective():
    geom = ChainGeometry(4, 0.3)
    result = sweep_g(
        geom, MONO, [1.0], 1, fold_quasienergies=False, n_edge_cells=1, workers=1
    )
    eps = [r.quasienergy for r in result.rows]
    assert min(eps) < -9 and max(eps) > 9
    result = sweep_g(
        geom, MONO, [0.0, 1.0], 20, method="effective", n_edge_cells=1, workers=1
    )
    assert len(result.rows) == 2 * 8
    assert result.metadata["m_max"] == 0
    assert all(r.population == 1.0 for r in result.rows)


def test_numeric_matches_analytic():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    a = sweep_g(geom, MONO, [1.5], 6, n_edge_cells=1, workers=1)
    b = sweep_g(geom, MONO, [1.5], 6, method="numeric", n_edge_cells=1, workers=1)
    ea = np.array([r.quasienergy for r in a.rows])
    eb = np.array([r.quasienergy for r in b.rows])
    assert np.max(np.abs(ea - eb)) < 1e-9


def test_workers_agree():
    geom = ChainGeometry(2, 0.3)
    grid = [0.0, 0.5, 1.0, 1.5]
    a = sweep_g(geom, MONO, grid, 1, n_edge_cells=1, workers=1)
    b = sweep_g(geom, MONO, grid, 1, n_edge_cells=1, workers=2)
    assert a.edge_counts == b.edge_counts
    assert len(a.rows) == len(b.rows)
    for ra, rb in zip(a.rows, b.rows):
        assert ra.g == rb.g and ra.state_index == rb.state_index
        assert abs(ra.quasienergy - rb.quasienergy) < 1e-12


def test_failures():
    d = DriveSpec(DriveKind.BEATING, 0.0, 10.0, omega_env=np.sqrt(2))
    result = sweep_g(ChainGeometry(2, 0.3), d, [0.0, 1.0], 1, n_edge_cells=1)
    assert len(result.rows) == 2
    assert all(r.state_index == -1 and np.isnan(r.quasienergy) for r in result.rows)
    assert result.edge_counts == [-1, -1]
    assert set(result.failures) == {0.0, 1.0}
    assert "UnsupportedConfiguration" in result.failures[0.0]


def test_sweep_errors():
    geom = ChainGeometry(4, 0.3)
    with pytest.raises(ContractError):
        sweep_g(geom, MONO, [], 2)
    with pytest.raises(ContractError):
        sweep_g(geom, MONO, [1.0, 0.5], 2)
    with pytest.raises(ContractError):
        sweep_g(geom, MONO, [1.0], 2, method="exact")
    with pytest.raises(ContractError):
        sweep_g(geom, MONO, [1.0], 2, n_edge_cells=3)


def test_static_detection(topological_chain):
    sol = diagonalize(assemble_monochromatic(topological_chain, MONO, 2))
    assert len(detect_edge_states(sol, topological_chain)) == 2
    trivial = ChainGeometry(20, 1.1)
    sol = diagonalize(assemble_monochromatic(trivial, MONO, 2))
    assert detect_edge_states(sol, trivial) == []
    with pytest.raises(ContractError):
        detect_edge_states(sol, trivial, weight_threshold=1.0)
    with pytest.raises(ContractError):
        detect_edge_states(sol, ChainGeometry(10, 1.1))


def test_topological_collapse(topological_chain):
    assert_edge_counts(topological_chain, {0.0: 2, 1.0: 2, 2.2: 0})


def test_trivial_onset(trivial_chain):
    assert_edge_counts(trivial_chain, {0.5: 0, 3.0: 2})


def first_change(result, before):
    """:returns: First coupling whose edge-state count differs from `before`."""
    return next(g for g, c in zip(result.g_grid, result.edge_counts) if c != before)


def test_transition_edge_cells(topological_chain):
    assert transition_edge_cells(topological_chain) == 5
    assert transition_edge_cells(ChainGeometry(4, 0.3)) == 2


def test_collapse_onset(topological_chain):
    # Edge states present at g = 0 vanish within 0.1 of the root of J_0(g) = 0.3
    root = phase_boundary(0.3, 1.0, 0.0, 8.0).roots[0]
    grid = [0.0] + list(np.round(np.arange(1.78, 1.905, 0.01), 10))
    result = sweep_g(
        topological_chain,
        MONO,
        grid,
        20,
        n_edge_cells=transition_edge_cells(topological_chain),
        workers=1,
    )
    assert result.edge_counts[0] == 2
    assert result.edge_counts[-1] == 0
    g = first_change(result, 2)
    assert abs(g - root) < 0.1, (g, root)


def test_trivial_onset_location(trivial_chain):
    # Onset lies on the topological side of 1.1 J_0(0.6 g) = J_0(0.4 g)
    root = phase_boundary(1.1, 1.0, 0.6, 8.0).roots[0]
    assert abs(root - 1.3388) < 1e-3
    grid = np.round(np.arange(1.30, 1.705, 0.01), 10)
    result = sweep_g(
        trivial_chain,
        MONO,
        grid,
        10,
        n_edge_cells=transition_edge_cells(trivial_chain),
        workers=1,
    )
    assert result.edge_counts[0] == 0
    assert result.edge_counts[-1] == 2
    g = first_change(result, 0)
    assert root < g < root + 0.4, (g, root)


def test_edge_transitions():
    result = SweepResult([], [0.0, 1.0, 2.0, 3.0, 4.0, 5.0], [2, 2, -1, 0, 0, 2])
    assert edge_transitions(result) == [(3.0, 2, 0), (5.0, 0, 2)]
    assert edge_transitions(SweepResult([], [0.0], [2])) == []


def test_phase_boundary():
    b = phase_boundary(0.3, 1.0, 0.0, 8.0)
    assert 1.8 < b.roots[0] < 1.9
    assert abs(bessel_j(0, b.roots[0]) - 0.3) < 1e-9
    for g in b.roots:
        assert abs(abs(bessel_j(0, g)) - 0.3) < 1e-9
    assert b.roots == sorted(b.roots)

    b = phase_boundary(1.1, 1.0, 0.6, 8.0)
    g = b.roots[0]
    assert 1.0 < g < 2.0
    assert abs(1.1 * abs(bessel_j(0, 0.6 * g)) - abs(bessel_j(0, 0.4 * g))) < 1e-9


def test_phase_boundary_edge_cases():
    b = phase_boundary(1.0, 1.0, 0.5, 8.0)
    assert b.degenerate and b.roots == []
    assert str(b) == "PhaseBoundary[degenerate]"
    with pytest.raises(DomainError):
        phase_boundary(0.3, 1.0, 0.0, 101.0)
    with pytest.raises(ContractError):
        phase_boundary(0.3, 1.0, 0.0, 0.0)
    # Static trivial chain without separation never becomes topological
    assert phase_boundary(1.1, 1.0, 0.0, 1.0).roots == []
