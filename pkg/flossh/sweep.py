# 786
# Flossh source: sweep.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import List, NamedTuple, Optional, Dict, Any, Tuple
from dataclasses import dataclass, field
from concurrent.futures import ProcessPoolExecutor
import os
import traceback
import numpy as np
import scipy.optimize

from .common import log, Timing, FlosshException, ContractError, DomainError
from .lattice import ChainGeometry
from .drive import DriveSpec
from .floquet import (
    FloquetSolution,
    assemble,
    diagonalize,
    effective_hamiltonian,
    fold,
    population,
)
from .specfun import QuadratureSettings, bessel_j
from .version import __version__


SWEEP_METHODS = ("analytic", "numeric", "effective")
"""Assembly methods understood by :py:func:`sweep_g`."""

WORKERS_ENV = "FLOSSH_WORKERS"
"""Environment variable with the default number of sweep workers."""

BOUNDARY_MAX_G = 100.0
"""Largest coupling supported by :py:func:`phase_boundary`."""

TRANSITION_CELL_FRACTION = 4
"""Transition detection counts `N // 4` cells per chain end (at least 2)."""


class SweepRow(NamedTuple):
    """Single state at a single coupling."""

    g: float
    quasienergy: float
    population: float
    edge_weight: float
    state_index: int


@dataclass
class SweepResult:
    """Spectrum table of a coupling sweep."""

    rows: List[SweepRow]
    """Rows sorted by `(g, quasienergy)`."""
    g_grid: List[float]
    """Coupling grid (input order)."""
    edge_counts: List[int]
    """Number of detected edge states per grid point (-1 on failure)."""
    metadata: Dict[str, Any] = field(default_factory=dict)
    """Run description (geometry, drive, cutoff, quadrature, version)."""
    failures: Dict[float, str] = field(default_factory=dict)
    """Failed grid points mapped to their diagnostic."""

    def at(self, g: float) -> List[SweepRow]:
        return [r for r in self.rows if r.g == g]


@dataclass
class PhaseBoundary:
    """Roots of the high-frequency topological criterion."""

    roots: List[float]
    """Ascending couplings with ``|v J_0(rg)| = |w J_0((1-r)g)|``."""
    degenerate: bool = False
    """Set if both sides agree for every coupling (no isolated roots)."""

    def __str__(self):
        if self.degenerate:
            return "PhaseBoundary[degenerate]"
        return "PhaseBoundary[{}]".format(", ".join(f"{g:.10f}" for g in self.roots))


def detect_edge_states(
    sol: FloquetSolution,
    geom: ChainGeometry,
    energy_window: float = 0.05,
    weight_threshold: float = 0.6,
    n_edge_cells: int = 2,
) -> List[int]:
    """
    Edge states among the first-zone representatives of a Floquet solution.

    :returns: State indices with ``|folded quasienergy| < energy_window`` and
        replica-summed edge weight above `weight_threshold`.
    """

    if not 0 < weight_threshold < 1:
        raise ContractError(f"weight_threshold must lie in (0, 1) ({weight_threshold})")
    if sol.n_sites != geom.n_sites:
        raise ContractError("solution and geometry sizes differ")
    idx = sol.first_zone()
    eps = fold(sol.quasienergies[idx], sol.base_frequency)
    weights = sol.edge_weights(n_edge_cells)[idx]
    return [
        int(i)
        for i, e, wt in zip(idx, eps, weights)
        if abs(e) < energy_window and wt > weight_threshold
    ]


def transition_edge_cells(geom: ChainGeometry) -> int:
    """
    :returns: Edge cells per chain end used to locate topological transitions
        (a quarter of the chain, at least 2).
    """
    return max(2, geom.n_dimers // TRANSITION_CELL_FRACTION)


def _sweep_point(args) -> Tuple[Optional[List[tuple]], int, Optional[str]]:
    """Evaluate one grid point. Top-level so that worker processes can pickle it."""

    geom, d, M, method, q, pop_kind, folded, detection = args
    try:
        if method == "effective":
            h = effective_hamiltonian(geom, d, q)
            energies, vectors = np.linalg.eigh(h)
            sol = FloquetSolution(
                0,
                d.base_frequency,
                geom.n_sites,
                energies,
                vectors,
                np.ones((geom.n_sites, 1)),
            )
        else:
            sol = diagonalize(assemble(geom, d, M, method, q))
        eps = sol.folded() if folded else sol.quasienergies
        pops = population(sol, pop_kind)
        weights = sol.edge_weights(detection[2])
        order = np.argsort(eps, kind="stable")
        rows = [
            (d.g, float(eps[i]), float(pops[i]), float(weights[i]), int(i))
            for i in order
        ]
        count = len(detect_edge_states(sol, geom, *detection))
        return rows, count, None
    except FlosshException as ex:
        log.debug(traceback.format_exc())
        return None, -1, f"{type(ex).__name__}: {ex}"


def default_workers() -> int:
    """:returns: Worker count from ``FLOSSH_WORKERS`` (default: CPU count)."""
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warn("Ignoring invalid {}={}", WORKERS_ENV, env)
    return os.cpu_count() or 1


def sweep_g(
    geom: ChainGeometry,
    d_template: DriveSpec,
    g_grid,
    M: int,
    method: str = "analytic",
    q: QuadratureSettings = QuadratureSettings(),
    population_kind: str = "central",
    fold_quasienergies: bool = True,
    energy_window: float = 0.05,
    weight_threshold: float = 0.6,
    n_edge_cells: int = 2,
    workers: Optional[int] = None,
) -> SweepResult:
    """
    Floquet spectra over a coupling grid.

    Each grid point is assembled, diagonalized and reported as ``2N(2M+1)`` rows
    sorted by quasienergy (``2N`` rows for the `effective` method). Points are
    independent and run in a process pool; results are merged in grid order.
    A failing point yields a single row of NaNs with state index -1 and the sweep
    continues.
    """

    grid = [float(g) for g in g_grid]
    if not grid:
        raise ContractError("empty coupling grid")
    if any(g < 0 for g in grid) or any(b < a for a, b in zip(grid, grid[1:])):
        raise ContractError("coupling grid must be ascending and non-negative")
    if method not in SWEEP_METHODS:
        raise ContractError(f"Unknown sweep method {method}")
    if not 1 <= n_edge_cells <= geom.n_dimers / 2:
        raise ContractError(f"n_edge_cells must lie in 1..N/2 (got {n_edge_cells})")
    if method == "effective":
        M = 0

    detection = (energy_window, weight_threshold, n_edge_cells)
    tasks = [
        (
            geom,
            d_template.with_g(g),
            M,
            method,
            q,
            population_kind,
            fold_quasienergies,
            detection,
        )
        for g in grid
    ]
    workers = workers or default_workers()
    workers = min(workers, len(tasks))
    with Timing(f"[sweep] {len(grid)} points with {workers} worker(s)"):
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_sweep_point, tasks))
        else:
            results = [_sweep_point(t) for t in tasks]

    rows: List[SweepRow] = []
    counts, failures = [], {}
    nan = float("nan")
    for g, (point_rows, count, error) in zip(grid, results):
        counts.append(count)
        if error is not None:
            log.warn("[sweep] g= {} failed: {}", g, error)
            failures[g] = error
            rows.append(SweepRow(g, nan, nan, nan, -1))
        else:
            rows.extend(SweepRow(*r) for r in point_rows)

    metadata = {
        "geometry": str(geom),
        "drive": str(d_template),
        "m_max": M,
        "base_frequency": d_template.base_frequency,
        "method": method,
        "quadrature": str(q),
        "population": population_kind,
        "version": __version__,
    }
    return SweepResult(rows, grid, counts, metadata, failures)


def edge_transitions(result: SweepResult) -> List[Tuple[float, int, int]]:
    """
    :returns: Couplings at which the number of detected edge states changes, as
        ``(g, count_before, count_after)``. Failed points are skipped.
    """
    out = []
    prev = None
    for g, c in zip(result.g_grid, result.edge_counts):
        if c < 0:
            continue
        if prev is not None and c != prev:
            out.append((g, prev, c))
        prev = c
    return out


def phase_boundary(
    v: float, w: float, r: float, g_max: float, resolution: float = 1e-3
) -> PhaseBoundary:
    """
    Couplings ``g ∈ (0, g_max]`` where ``|v J_0(rg)| = |w J_0((1-r)g)|``.

    Sign changes are bracketed on a grid of step `resolution` and refined by
    Brent's method to ``1e-10``.

    :raises: :py:class:`flossh.common.DomainError` if ``g_max > 100``.
    """

    if g_max > BOUNDARY_MAX_G:
        raise DomainError(f"g_max must not exceed {BOUNDARY_MAX_G:g} (got {g_max})")
    if not g_max > 0:
        raise ContractError(f"g_max must be positive (got {g_max})")

    def h(g):
        return np.abs(v * bessel_j(0, r * g)) - np.abs(w * bessel_j(0, (1 - r) * g))

    n = max(int(np.ceil(g_max / resolution)), 2) + 1
    grid = np.linspace(0, g_max, n)
    vals = h(grid)
    if np.max(np.abs(vals)) < 1e-14:
        return PhaseBoundary([], degenerate=True)

    roots = []
    for i in range(1, n):
        a, b = grid[i - 1], grid[i]
        fa, fb = vals[i - 1], vals[i]
        if fb == 0:
            roots.append(float(b))
        elif fa * fb < 0:
            roots.append(float(scipy.optimize.brentq(h, a, b, xtol=1e-12)))
    log.debug("[sweep] boundary v={} w={} r={}: {}", v, w, r, roots)
    return PhaseBoundary(roots)
