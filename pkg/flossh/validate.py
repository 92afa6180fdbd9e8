# 786
# Flossh source: validate.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Callable, List, Tuple
from dataclasses import dataclass
import time
import numpy as np

from .common import log, FlosshException
from .lattice import (
    ChainGeometry,
    build_static_hamiltonian,
    chiral_operator,
    edge_weight,
    static_spectrum,
)
from .drive import DriveSpec, DriveKind, frame_defect
from .specfun import (
    QuadratureSettings,
    bessel_j,
    fourier_coefficients,
    gaussian_phase,
    gaussian_phase_quad,
)
from .floquet import (
    assemble,
    assemble_beating,
    assemble_monochromatic,
    assemble_numeric,
    diagonalize,
    propagate_one_period,
    propagator_quasienergies,
    zone_distance,
    zone_quasienergies,
)
from .sweep import (
    detect_edge_states,
    phase_boundary,
    sweep_g,
    transition_edge_cells,
)


J0_FIRST_ZERO = 2.404825557695773
"""First positive zero of ``J_0``."""


@dataclass
class CheckResult:
    """Outcome of a single oracle cross-check."""

    module: str
    """Module under test."""
    name: str
    """Check description."""
    value: float
    """Measured deviation."""
    tolerance: float
    """Largest accepted deviation."""
    seconds: float = 0.0
    """Run time."""
    error: str = ""
    """Exception raised by the check, if any."""

    @property
    def passed(self) -> bool:
        return not self.error and self.value <= self.tolerance

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        detail = self.error or f"{self.value:.3e} <= {self.tolerance:.1e}"
        name = f"{self.module:8} {self.name:42}"
        return f"{status}  {name} {detail} ({self.seconds:.1f}s)"


def _mono(g, omega=10.0, **kw):
    return DriveSpec(DriveKind.MONOCHROMATIC, g, omega, **kw)


def _count(ok: bool) -> float:
    return 0.0 if ok else 1.0


def _zone(h):
    return zone_quasienergies(diagonalize(h))


def check_bessel_zero():
    return abs(bessel_j(0, J0_FIRST_ZERO)), 1e-10


def check_bessel_parity():
    n = np.arange(-10, 11)[:, None]
    x = np.linspace(-20, 20, 81)[None, :]
    dev = np.abs(bessel_j(n, -x) - (-1.0) ** n * bessel_j(n, x))
    return float(np.max(dev)), 1e-14


def check_bessel_normalization():
    n = np.arange(-60, 61)
    dev = max(abs(np.sum(bessel_j(n, x) ** 2) - 1) for x in np.linspace(0, 10, 21))
    return float(dev), 1e-10


def check_gaussian_phase():
    dev = 0.0
    for c in (0.5, 2.0, 10.0, 100.0):
        for tau in (-100.0, -31.4, -2.5, 0.0, 0.7, 5.0, 42.0, 100.0):
            dev = max(dev, abs(gaussian_phase(tau, c) - gaussian_phase_quad(tau, c)))
    return dev, 1e-10


def check_jacobi_anger():
    z, omega = 1.5, 10.0
    a = fourier_coefficients(
        lambda t: np.exp(1j * z * np.sin(omega * t)),
        2 * np.pi / omega,
        10,
        QuadratureSettings(512),
    )
    return float(np.max(np.abs(a.values - bessel_j(a.orders, z)))), 1e-10


def check_static_edge_modes():
    ok = True
    for v, expected in ((0.3, 2), (1.1, 0)):
        geom = ChainGeometry(20, v)
        energies, states = static_spectrum(geom)
        mid = np.flatnonzero(np.abs(energies) < 1e-3)
        ok &= len(mid) == expected
        ok &= all(edge_weight(states[:, i], geom, 2) > 0.9 for i in mid)
    return _count(ok), 0.0


def check_chiral_symmetry():
    geom = ChainGeometry(7, 0.4, 1.0, 0.3)
    h, s = build_static_hamiltonian(geom), chiral_operator(geom)
    return float(np.max(np.abs(s @ h @ s + h))), 1e-12


def check_bulk_band_edge():
    energies, _ = static_spectrum(ChainGeometry(200, 0.3))
    return abs(energies[-1] - 1.3), 1e-3


def check_frame_equivalence():
    geom = ChainGeometry(4, 0.3, 1.0, 0.5)
    drives = [
        _mono(1.0),
        DriveSpec(DriveKind.GAUSSIAN, 1.0, 10.0, c=10.0),
        DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=5.0),
    ]
    dev = 0.0
    for d in drives:
        t0 = d.window_start()
        for t in t0 + np.linspace(0, d.base_period, 25):
            dev = max(dev, frame_defect(geom, d, t))
    return dev, 1e-6


def check_numeric_vs_bessel():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    dev = 0.0
    for g in (0.5, 2.0, 5.0):
        a = assemble_monochromatic(geom, _mono(g), 20)
        b = assemble_numeric(geom, _mono(g), 20, q=QuadratureSettings(1024))
        dev = max(dev, float(np.max(np.abs(a.matrix - b.matrix))))
    return dev, 1e-9


def check_beating_vs_numeric():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    d = DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=5.0)
    a = assemble_beating(geom, d, 10)
    b = assemble_numeric(geom, d, 10, d.omega_minus)
    return float(np.max(np.abs(a.matrix - b.matrix))), 1e-8


def _propagator_check(steps):
    def check():
        dev = 0.0
        for r in (0.0, 0.6):
            for g in (1.0, 3.0):
                geom, d = ChainGeometry(4, 0.3, 1.0, r), _mono(g)
                sol = diagonalize(assemble_monochromatic(geom, d, 20))
                u = propagate_one_period(geom, d, steps=steps)
                eps = propagator_quasienergies(u, d.base_period)
                dev = max(dev, zone_distance(zone_quasienergies(sol), eps, 10.0))
        return dev, 1e-6

    return check


def check_limits():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    ref = _zone(assemble_monochromatic(geom, _mono(2.0), 20))
    gauss = DriveSpec(DriveKind.GAUSSIAN, 2.0, 10.0, c=1e6)
    beat = DriveSpec(DriveKind.BEATING, 2.0, 10.0, omega_env=1e-7)
    dev = 0.0
    for h in (
        assemble_numeric(geom, gauss, 20),
        assemble_beating(geom, beat, 20),
    ):
        dev = max(dev, zone_distance(_zone(h), ref, 10.0))
    return dev, 1e-6


def check_floquet_invariants():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    dev_h, dev_p = 0.0, 0.0
    for h in (
        assemble_monochromatic(geom, _mono(2.5), 10),
        assemble_numeric(geom, DriveSpec(DriveKind.GAUSSIAN, 2.5, 10.0, c=5.0), 10),
        assemble_beating(
            geom, DriveSpec(DriveKind.BEATING, 2.5, 10.0, omega_env=5.0), 10
        ),
    ):
        dev_h = max(dev_h, h.hermiticity_defect())
        sol = diagonalize(h)
        dev_p = max(dev_p, float(np.max(np.abs(sol.populations.sum(axis=1) - 1))))
    return max(dev_h / 1e-12, dev_p / 1e-10), 1.0


def check_chiral_pairing():
    geom = ChainGeometry(4, 0.3, 1.0, 0.0)
    eps = _zone(assemble_monochromatic(geom, _mono(2.0), 20))
    return zone_distance(eps, -eps, 10.0), 1e-8


def check_gauge_invariance():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    a = _zone(assemble_monochromatic(geom, _mono(2.0), 20))
    d = _mono(2.0, phase_offset=0.37)
    b = _zone(assemble_monochromatic(geom, d, 20))
    return zone_distance(a, b, 10.0), 1e-8


def check_cutoff_stability():
    geom = ChainGeometry(4, 0.3, 1.0, 0.6)
    sets = []
    for M in (20, 25):
        eps = _zone(assemble_monochromatic(geom, _mono(8.0), M))
        sets.append(eps[np.abs(eps) < 2.5])
    return zone_distance(sets[0], sets[1], 10.0), 1e-6


def check_phase_boundary():
    ok = True
    for v, r, lo, hi in ((0.3, 0.0, 1.8, 1.9), (1.1, 0.6, 1.0, 2.0)):
        roots = phase_boundary(v, 1.0, r, 8.0).roots
        ok &= bool(roots) and lo < roots[0] < hi
    return _count(ok), 0.0


def check_edge_detection():
    ok = True
    for v, expected in ((0.3, 2), (1.1, 0)):
        geom = ChainGeometry(20, v)
        sol = diagonalize(assemble_monochromatic(geom, _mono(0.0), 2))
        ok &= len(detect_edge_states(sol, geom)) == expected
    return _count(ok), 0.0


def _first_change(geom, grid, M, before):
    result = sweep_g(
        geom, _mono(0.0), grid, M, n_edge_cells=transition_edge_cells(geom), workers=1
    )
    counts = result.edge_counts
    return next((g for g, c in zip(grid, counts) if c != before), float("inf"))


def _collapse_check(lo):
    def check():
        root = phase_boundary(0.3, 1.0, 0.0, 8.0).roots[0]
        grid = [0.0] + list(np.round(np.arange(lo, 2.0001, 0.01), 10))
        return abs(_first_change(ChainGeometry(20, 0.3), grid, 20, 2) - root), 0.1

    return check


def check_trivial_onset():
    root = phase_boundary(1.1, 1.0, 0.6, 8.0).roots[0]
    grid = list(np.round(np.arange(1.2, 2.0001, 0.01), 10))
    g = _first_change(ChainGeometry(20, 1.1, 1.0, 0.6), grid, 10, 0)
    return _count(root < g < root + 0.4), 0.0


def upper_cluster_width(geom, d, M=20) -> float:
    """:returns: Spread of the first-zone quasienergies above ``0.2 w``."""
    eps = _zone(assemble(geom, d, M))
    cluster = eps[eps > 0.2]
    return float(cluster.max() - cluster.min())


def check_gaussian_lifting():
    geom = ChainGeometry(20, 1.1, 1.0, 0.6)
    g = J0_FIRST_ZERO / 0.6
    mono = upper_cluster_width(geom, _mono(g))
    gauss = upper_cluster_width(geom, DriveSpec(DriveKind.GAUSSIAN, g, 10.0, c=10.0))
    log.debug("[validate] cluster widths: monochromatic {}, Gaussian {}", mono, gauss)
    return 5 * mono / gauss, 1.0


def checks(quick: bool = False) -> List[Tuple[str, str, Callable]]:
    """:returns: Oracle cross-checks as `(module, name, function)`."""
    return [
        ("specfun", "first zero of J_0", check_bessel_zero),
        ("specfun", "Bessel parity", check_bessel_parity),
        ("specfun", "Bessel normalization", check_bessel_normalization),
        ("specfun", "Gaussian phase vs quadrature", check_gaussian_phase),
        ("specfun", "Fourier vs Jacobi-Anger", check_jacobi_anger),
        ("lattice", "static edge modes", check_static_edge_modes),
        ("lattice", "chiral symmetry", check_chiral_symmetry),
        ("lattice", "bulk band edge (N=200)", check_bulk_band_edge),
        ("drive", "frame equivalence", check_frame_equivalence),
        ("floquet", "quadrature vs Bessel blocks", check_numeric_vs_bessel),
        ("floquet", "beating vs quadrature blocks", check_beating_vs_numeric),
        (
            "floquet",
            "propagator vs Floquet-Fourier",
            _propagator_check(20_000 if quick else 100_000),
        ),
        ("floquet", "Gaussian and beating limits", check_limits),
        ("floquet", "Hermiticity and populations", check_floquet_invariants),
        ("floquet", "chiral pairing (r=0)", check_chiral_pairing),
        ("floquet", "gauge invariance", check_gauge_invariance),
        ("floquet", "cutoff stability (M -> M+5)", check_cutoff_stability),
        ("sweep", "phase boundary brackets", check_phase_boundary),
        ("sweep", "edge-state detection", check_edge_detection),
        (
            "sweep",
            "collapse onset vs J_0(g) = 0.3",
            _collapse_check(1.75 if quick else 1.6),
        ),
        ("sweep", "trivial onset side", check_trivial_onset),
        ("sweep", "Gaussian degeneracy lifting", check_gaussian_lifting),
    ]


def run_validation(quick: bool = False) -> List[CheckResult]:
    """Run every oracle cross-check and report the results through the log."""

    results = []
    for module, name, fn in checks(quick):
        start = time.time()
        try:
            value, tol = fn()
            res = CheckResult(module, name, float(value), tol)
        except FlosshException as ex:
            res = CheckResult(module, name, float("inf"), 0.0, error=repr(ex))
        res.seconds = time.time() - start
        log.info("{}", res)
        results.append(res)
    failed = sum(not r.passed for r in results)
    log.info("{} checks, {} failed", len(results), failed)
    return results
