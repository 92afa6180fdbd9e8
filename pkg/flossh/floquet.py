# 786
# Flossh source: floquet.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Optional, Tuple, List
from dataclasses import dataclass
import numpy as np
import scipy.linalg

from .common import (
    log,
    Timing,
    ContractError,
    NumericError,
    AccuracyError,
    UnsupportedConfiguration,
    HERMITIAN_TOLERANCE,
)
from .lattice import ChainGeometry, build_static_hamiltonian, hopping_matrix
from .lattice import edge_profile
from .drive import DriveSpec, DriveKind, commensurate_ratio, COMMENSURATE_TOLERANCE
from .drive import hopping_modulations, field_profile, unitary_p
from .specfun import QuadratureSettings, bessel_j, fourier_coefficients


POPULATION_KINDS = ("central", "max")
"""
Scalar population definitions: weight on the central replica (`central`) or the
largest replica weight (`max`).
"""

UNITARITY_TOLERANCE = 1e-8
"""Largest accepted ``max |U^†U - 1|`` of the one-period propagator."""


@dataclass
class FloquetMatrix:
    """Truncated Floquet-Fourier Hamiltonian with replicas ``-M..M``."""

    m_max: int
    """Replica cutoff `M`."""
    base_frequency: float
    """Replica spacing ``Ω_base``."""
    n_sites: int
    """Number of sites ``2N`` of the chain."""
    matrix: np.ndarray
    """
    Hermitian matrix of dimension ``2N(2M+1)``. Replica `m` occupies rows
    ``(m + M) * 2N`` to ``(m + M + 1) * 2N``.
    """

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def block(self, m: int, mp: int) -> np.ndarray:
        """:returns: Block ``(m, m′)`` of size ``2N x 2N``."""
        if not (-self.m_max <= m <= self.m_max and -self.m_max <= mp <= self.m_max):
            raise ContractError(f"replica ({m}, {mp}) outside ±{self.m_max}")
        i, j = (m + self.m_max) * self.n_sites, (mp + self.m_max) * self.n_sites
        return self.matrix[i : i + self.n_sites, j : j + self.n_sites]

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def __str__(self):
        return (
            f"FloquetMatrix[M={self.m_max}; Ω={self.base_frequency:.6g}; "
            f"dim={self.dim}]"
        )


@dataclass
class FloquetSolution:
    """Eigendecomposition of a :py:class:`FloquetMatrix`."""

    m_max: int
    """Replica cutoff `M`."""
    base_frequency: float
    """Replica spacing ``Ω_base``."""
    n_sites: int
    """Number of sites ``2N``."""
    quasienergies: np.ndarray
    """Unfolded quasienergies in ascending order."""
    eigenvectors: np.ndarray
    """Eigenvectors (columns) in the replica-major basis."""
    populations: np.ndarray
    """Replica weights ``p_{α,m}``; shape ``(2N(2M+1), 2M+1)``."""

    @property
    def population_scalar(self) -> np.ndarray:
        """Central-replica weight ``p_{α,0}`` of each state."""
        return self.populations[:, self.m_max]

    def site_probabilities(self) -> np.ndarray:
        """
        :returns: Replica-summed site probabilities; shape ``(states, 2N)``.
        """
        u = self.eigenvectors.T.reshape(-1, 2 * self.m_max + 1, self.n_sites)
        return (np.abs(u) ** 2).sum(axis=1)

    def edge_weights(self, n_edge_cells: int) -> np.ndarray:
        """:returns: Edge weight of every state (see :py:func:`lattice.edge_weight`)."""
        if not 1 <= n_edge_cells <= self.n_sites / 4:
            raise ContractError(f"n_edge_cells must lie in 1..N/2 (got {n_edge_cells})")
        return edge_profile(self.site_probabilities(), self.n_sites // 2, n_edge_cells)

    def folded(self) -> np.ndarray:
        return fold(self.quasienergies, self.base_frequency)

    def first_zone(self) -> np.ndarray:
        """
        :returns: Indices of the states with unfolded quasienergy in
            ``[-Ω_base/2, Ω_base/2)``, one representative per Floquet state.
        """
        half = self.base_frequency / 2
        eps = self.quasienergies
        idx = np.flatnonzero((eps >= -half) & (eps < half))
        if len(idx) != self.n_sites:
            log.debug(
                "[floquet] first zone holds {} states instead of {}",
                len(idx),
                self.n_sites,
            )
        return idx

    def __str__(self):
        return (
            f"FloquetSolution[M={self.m_max}; states={len(self.quasienergies)}; "
            f"ε=[{self.quasienergies[0]:.4f}, {self.quasienergies[-1]:.4f}]]"
        )


def population(sol: FloquetSolution, kind: str = "central") -> np.ndarray:
    """:returns: Scalar population of every state (see :py:data:`POPULATION_KINDS`)."""
    if kind == "central":
        return sol.population_scalar
    if kind == "max":
        return sol.populations.max(axis=1)
    raise ContractError(f"Unknown population definition {kind}")


def _assemble(
    geom: ChainGeometry, cv: np.ndarray, cw: np.ndarray, m_max: int, base_frequency
) -> FloquetMatrix:
    """
    Build the block matrix from the Fourier coefficients of the hopping modulations.

    `cv` and `cw` hold the coefficients of ``p_v`` and ``p_w`` for orders
    ``-2M..2M``. Block ``(m, m′)`` is the coefficient ``K_{m′-m}`` of the
    transformed Hamiltonian, minus ``mΩ_base`` on the diagonal; the lower
    hoppings use ``conj(c_{-n})`` so the matrix is Hermitian by construction.
    """

    n_sites = geom.n_sites
    size = 2 * m_max + 1
    a = np.arange(0, n_sites, 2)
    b = a + 1
    offset = 2 * m_max
    kn = []
    for n in range(-2 * m_max, 2 * m_max + 1):
        k = np.zeros((n_sites, n_sites), dtype=complex)
        k[a, b] = geom.v * cv[n + offset]
        k[b, a] = geom.v * np.conj(cv[-n + offset])
        k[a[1:], b[:-1]] = geom.w * cw[n + offset]
        k[b[:-1], a[1:]] = geom.w * np.conj(cw[-n + offset])
        kn.append(k)

    h = np.zeros((size * n_sites, size * n_sites), dtype=complex)
    for i, m in enumerate(range(-m_max, m_max + 1)):
        for j, mp in enumerate(range(-m_max, m_max + 1)):
            h[i * n_sites : (i + 1) * n_sites, j * n_sites : (j + 1) * n_sites] = kn[
                mp - m + offset
            ]
        h[
            np.arange(i * n_sites, (i + 1) * n_sites),
            np.arange(i * n_sites, (i + 1) * n_sites),
        ] -= (m * base_frequency)
    return FloquetMatrix(m_max, base_frequency, n_sites, h)


def _check_cutoff(m_max: int):
    if int(m_max) != m_max or m_max < 0:
        raise ContractError(f"replica cutoff must be a non-negative integer ({m_max})")


def monochromatic_coefficients(
    geom: ChainGeometry, d: DriveSpec, n_max: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    :returns: Fourier coefficients of ``(p_v, p_w)`` for orders ``-n_max..n_max``:
        ``(-1)^n J_n(g′)`` and ``J_n(g″)`` (times the phases of the phase offset).
    """
    n = np.arange(-n_max, n_max + 1)
    gp, gpp = geom.r * d.g, (1 - geom.r) * d.g
    cv = bessel_j(n, -gp) * np.exp(-1j * gp * d.phase_offset)
    cw = bessel_j(n, gpp) * np.exp(1j * gpp * d.phase_offset)
    return cv, cw


def assemble_monochromatic(geom: ChainGeometry, d: DriveSpec, M: int) -> FloquetMatrix:
    """
    Floquet-Fourier Hamiltonian of a monochromatic drive via the Jacobi-Anger
    expansion. For ``n = m′ - m``, the intra-cell block is
    ``v J_n(g′) [(-1)^n σ₊ + σ₋]`` and the inter-cell block carries ``w J_n(g″)``
    on the forward hop and ``w (-1)^n J_n(g″)`` on the backward hop.
    """

    if d.kind != DriveKind.MONOCHROMATIC:
        raise ContractError(f"expected a monochromatic drive (got {d.kind.value})")
    _check_cutoff(M)
    cv, cw = monochromatic_coefficients(geom, d, 2 * M)
    return _assemble(geom, cv, cw, M, d.omega_drive)


def beating_coefficients(
    geom: ChainGeometry,
    d: DriveSpec,
    n_max: int,
    m_inner: int,
    tol: float = COMMENSURATE_TOLERANCE,
) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Fourier coefficients of ``(p_v, p_w)`` for a beating drive via the double
    Jacobi-Anger expansion

        ``exp(-ig′s) = Σ J_{m1}(-g′Ω/2Ω₊) J_{m2}(-g′Ω/2Ω₋) e^{i(m1 Ω₊ + m2 Ω₋)t}``

    with ``Ω₊ = p Ω_f`` and ``Ω₋ = q Ω_f``. Coefficient `k` collects all pairs with
    ``m1 p + m2 q = k`` and ``|m1|, |m2| <= m_inner``.

    :returns: ``(cv, cw, Ω_f)`` for orders ``-n_max..n_max``.
    :raises: :py:class:`flossh.common.UnsupportedConfiguration` if ``Ω₊/Ω₋`` is
        not rational within `tol`.
    """

    frac = commensurate_ratio(d.omega_plus, d.omega_minus, tol)
    if frac is None:
        raise UnsupportedConfiguration(
            f"Ω₊/Ω₋ = {d.omega_plus / d.omega_minus:.12g} is not commensurate; "
            "use assemble_numeric for this drive"
        )
    p, q = frac.numerator, frac.denominator
    m = np.arange(-m_inner, m_inner + 1)

    def coefficients(coupling):
        j_plus = bessel_j(m, coupling * d.omega_drive / (2 * d.omega_plus))
        j_minus = bessel_j(m, coupling * d.omega_drive / (2 * d.omega_minus))
        out = np.zeros(2 * n_max + 1, dtype=complex)
        for i, k in enumerate(range(-n_max, n_max + 1)):
            rest = k - m * p
            ok = (rest % q == 0) & (np.abs(rest // q) <= m_inner)
            out[i] = np.sum(j_plus[ok] * j_minus[rest[ok] // q + m_inner])
        return out

    gp, gpp = geom.r * d.g, (1 - geom.r) * d.g
    cv = coefficients(-gp) * np.exp(-1j * gp * d.phase_offset)
    cw = coefficients(gpp) * np.exp(1j * gpp * d.phase_offset)
    return cv, cw, d.omega_minus / q


def assemble_beating(
    geom: ChainGeometry, d: DriveSpec, M: int, tol: float = COMMENSURATE_TOLERANCE
) -> FloquetMatrix:
    """
    Floquet-Fourier Hamiltonian of a commensurate beating drive. The replica
    spacing is the fundamental ``Ω_f = Ω₋/q`` (``Ω₋`` whenever ``Ω₊`` is an
    integer multiple of ``Ω₋``). The inner double sum runs up to
    ``max(M + 10, 1.5 max|argument| + 30)``.
    """

    if d.kind != DriveKind.BEATING:
        raise ContractError(f"expected a beating drive (got {d.kind.value})")
    _check_cutoff(M)
    arg = d.g * d.omega_drive / (2 * d.omega_minus)
    m_inner = max(M + 10, int(np.ceil(1.5 * arg)) + 30)
    cv, cw, omega_f = beating_coefficients(geom, d, 2 * M, m_inner, tol)
    log.trace("[floquet] beating: Ω_f= {}, inner cutoff= {}", omega_f, m_inner)
    return _assemble(geom, cv, cw, M, omega_f)


def assemble_numeric(
    geom: ChainGeometry,
    d: DriveSpec,
    M: int,
    base_frequency: Optional[float] = None,
    q: QuadratureSettings = QuadratureSettings(),
) -> FloquetMatrix:
    """
    Floquet-Fourier Hamiltonian from quadrature of the hopping modulations over one
    base period ``2π/base_frequency`` (default: ``d.base_frequency``). Works for
    every drive; for the Gaussian pulse the window follows
    :py:meth:`drive.DriveSpec.window_start`.
    """

    _check_cutoff(M)
    omega = base_frequency or d.base_frequency
    if not omega > 0:
        raise ContractError(f"base frequency must be positive (got {omega})")
    period = 2 * np.pi / omega
    t0 = d.window_start(omega)
    cv = fourier_coefficients(
        lambda t: hopping_modulations(d, geom, t)[0], period, 2 * M, q, t0
    )
    cw = fourier_coefficients(
        lambda t: hopping_modulations(d, geom, t)[1], period, 2 * M, q, t0
    )
    return _assemble(geom, cv.values, cw.values, M, omega)


def assemble(
    geom: ChainGeometry,
    d: DriveSpec,
    M: int,
    method: str = "analytic",
    q: QuadratureSettings = QuadratureSettings(),
) -> FloquetMatrix:
    """
    Assemble the Floquet-Fourier Hamiltonian with the given method.
    `analytic` uses the Bessel expansions where they exist (Gaussian pulses always
    use quadrature); `numeric` always uses quadrature.
    """
    if method == "analytic":
        if d.kind == DriveKind.MONOCHROMATIC:
            return assemble_monochromatic(geom, d, M)
        if d.kind == DriveKind.BEATING:
            return assemble_beating(geom, d, M)
        return assemble_numeric(geom, d, M, q=q)
    if method == "numeric":
        return assemble_numeric(geom, d, M, q=q)
    raise ContractError(f"Unknown assembly method {method}")


def h00_approx(geom: ChainGeometry, g: float) -> np.ndarray:
    """
    High-frequency approximation of a monochromatic drive: the static SSH
    Hamiltonian with ``v -> v J_0(g′)`` and ``w -> w J_0(g″)``.
    """
    return hopping_matrix(
        geom.n_dimers,
        geom.v * bessel_j(0, geom.r * g),
        geom.w * bessel_j(0, (1 - geom.r) * g),
    )


def effective_hoppings(
    geom: ChainGeometry, d: DriveSpec, q: QuadratureSettings = QuadratureSettings()
) -> Tuple[complex, complex]:
    """
    :returns: Renormalized hoppings ``(v c_0[p_v], w c_0[p_w])`` of the
        high-frequency Hamiltonian for any drive.
    """
    if d.kind == DriveKind.MONOCHROMATIC:
        cv, cw = monochromatic_coefficients(geom, d, 0)
    else:
        omega = d.base_frequency
        t0 = d.window_start(omega)
        period = 2 * np.pi / omega
        cv = fourier_coefficients(
            lambda t: hopping_modulations(d, geom, t)[0], period, 0, q, t0
        ).values
        cw = fourier_coefficients(
            lambda t: hopping_modulations(d, geom, t)[1], period, 0, q, t0
        ).values
    return complex(geom.v * cv[0]), complex(geom.w * cw[0])


def effective_hamiltonian(
    geom: ChainGeometry, d: DriveSpec, q: QuadratureSettings = QuadratureSettings()
) -> np.ndarray:
    """:returns: The ``H_00`` block of the drive (see :py:func:`effective_hoppings`)."""
    v_eff, w_eff = effective_hoppings(geom, d, q)
    return hopping_matrix(geom.n_dimers, v_eff, w_eff)


def diagonalize(H: FloquetMatrix) -> FloquetSolution:
    """
    Dense Hermitian eigendecomposition of a Floquet-Fourier Hamiltonian.

    :raises: :py:class:`flossh.common.ContractError` if `H` is not Hermitian.
    :raises: :py:class:`flossh.common.NumericError` if the eigensolver fails.
    """

    defect = H.hermiticity_defect()
    if defect > HERMITIAN_TOLERANCE:
        raise ContractError(f"matrix is not Hermitian (defect {defect:.3g})")
    with Timing(f"[floquet] eigh dim={H.dim}", log.trace):
        try:
            energies, vectors = scipy.linalg.eigh(H.matrix)
        except (scipy.linalg.LinAlgError, ValueError) as ex:
            raise NumericError(
                f"eigensolver failed for dimension {H.dim}, "
                f"norm {np.linalg.norm(H.matrix):.6g}, "
                f"Hermiticity defect {defect:.3g}: {ex}"
            ) from ex
    size = 2 * H.m_max + 1
    weights = np.abs(vectors.T.reshape(-1, size, H.n_sites)) ** 2
    return FloquetSolution(
        H.m_max, H.base_frequency, H.n_sites, energies, vectors, weights.sum(axis=2)
    )


def fold(quasienergies, omega_base: float):
    """:returns: Quasienergies reduced into the first zone ``[-Ω/2, Ω/2)``."""
    if not omega_base > 0:
        raise ContractError(f"omega_base must be positive (got {omega_base})")
    x = np.asarray(quasienergies, dtype=float)
    f = np.mod(x + omega_base / 2, omega_base) - omega_base / 2
    f = np.where(f >= omega_base / 2, f - omega_base, f)
    return f if np.ndim(f) else float(f)


def zone_distance(a, b, omega_base: float) -> float:
    """
    :returns: Symmetric Hausdorff distance between two quasienergy sets, measured
        on the circle of circumference `omega_base`.
    """
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        return 0.0 if len(a) == len(b) else float("inf")
    d = np.abs(fold(a[:, None] - b[None, :], omega_base))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def propagate_one_period(
    geom: ChainGeometry,
    d: DriveSpec,
    base_period: Optional[float] = None,
    steps: int = 100_000,
    t_start: float = 0.0,
) -> np.ndarray:
    """
    Lab-frame propagator ``U(t_start + T, t_start)`` of ``H_S + V(t)`` by the
    classical fourth-order Runge-Kutta scheme with `steps` fixed steps.

    :raises: :py:class:`flossh.common.AccuracyError` if the unitarity defect
        exceeds :py:data:`UNITARITY_TOLERANCE`.
    """

    period = base_period or d.base_period
    if steps < 1:
        raise ContractError("at least one step is needed")
    hs = build_static_hamiltonian(geom).astype(complex)
    x = geom.site_positions()
    amp = d.g * d.omega_drive

    def rhs(t, u):
        return -1j * (hs @ u + (amp * field_profile(d, t) * x)[:, None] * u)

    dt = period / steps
    u = np.eye(geom.n_sites, dtype=complex)
    with Timing(f"[floquet] RK4 steps={steps}", log.trace):
        for i in range(steps):
            t = t_start + i * dt
            k1 = rhs(t, u)
            k2 = rhs(t + dt / 2, u + dt / 2 * k1)
            k3 = rhs(t + dt / 2, u + dt / 2 * k2)
            k4 = rhs(t + dt, u + dt * k3)
            u = u + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(geom.n_sites))))
    if defect > UNITARITY_TOLERANCE:
        raise AccuracyError(
            f"propagator unitarity defect {defect:.3g} exceeds "
            f"{UNITARITY_TOLERANCE:g}; increase the number of steps (now {steps})"
        )
    return u


def propagator_quasienergies(U: np.ndarray, base_period: float) -> np.ndarray:
    """:returns: Folded quasienergies ``-arg(λ)/T`` of the propagator, ascending."""
    phases = -np.angle(np.linalg.eigvals(U)) / base_period
    return np.sort(fold(phases, 2 * np.pi / base_period))


def frame_propagator(
    geom: ChainGeometry, d: DriveSpec, U: np.ndarray, t0: float, t1: float
) -> np.ndarray:
    """:returns: Transformed-frame propagator ``P(t1)^† U P(t0)``."""
    return unitary_p(geom, d, t1).conj().T @ U @ unitary_p(geom, d, t0)


def zone_quasienergies(sol: FloquetSolution) -> np.ndarray:
    """:returns: Folded quasienergies of the first-zone representatives, ascending."""
    return np.sort(fold(sol.quasienergies[sol.first_zone()], sol.base_frequency))


def replica_offsets(H: FloquetMatrix) -> List[float]:
    """:returns: Largest deviation of block ``(m, m′)`` from block ``(0, m′ - m)``."""
    out = []
    for m in range(-H.m_max, H.m_max + 1):
        for mp in range(-H.m_max, H.m_max + 1):
            if m == mp or not -H.m_max <= mp - m <= H.m_max:
                continue
            out.append(float(np.max(np.abs(H.block(m, mp) - H.block(0, mp - m)))))
    return out
