# 786
# Flossh source: lattice.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Tuple, Union
from dataclasses import dataclass
import numpy as np

from .common import log, ContractError, NORM_TOLERANCE


SUBLATTICES = ("A", "B")
"""Sublattice labels. Site index is ``2 * (cell - 1) + sublattice``."""


@dataclass(frozen=True)
class ChainGeometry:
    """Open SSH chain of `n_dimers` unit cells. Immutable."""

    n_dimers: int
    """Number of dimers (unit cells) `N`."""
    v: float
    """Intra-cell hopping (units of `w`)."""
    w: float = 1.0
    """Inter-cell hopping (energy unit)."""
    r: float = 0.0
    """Dimer separation ratio ``b/a``."""

    def __post_init__(self):
        if int(self.n_dimers) != self.n_dimers or self.n_dimers < 1:
            raise ContractError(
                f"n_dimers must be a positive integer ({self.n_dimers})"
            )
        if not self.v >= 0:
            raise ContractError(f"v must satisfy v >= 0 (got {self.v})")
        if not self.w > 0:
            raise ContractError(f"w must satisfy w > 0 (got {self.w})")
        if not 0 <= self.r < 1:
            raise ContractError(f"r must satisfy 0 <= r < 1 (got {self.r})")

    @property
    def n_sites(self) -> int:
        return 2 * self.n_dimers

    def site(self, cell: int, sublattice: str) -> int:
        """:returns: Basis index of the site (`cell` is 1-based)."""
        if not 1 <= cell <= self.n_dimers:
            raise ContractError(f"cell {cell} outside 1..{self.n_dimers}")
        return 2 * (cell - 1) + SUBLATTICES.index(sublattice)

    def site_positions(self) -> np.ndarray:
        """
        Site positions along the chain in units of the lattice constant `a`,
        measured from the chain centre: ``(2ℓ - N - 1)/2 - (r/2)σ`` with ``σ = +1``
        on A and ``-1`` on B.
        """
        cells = np.repeat(np.arange(1, self.n_dimers + 1), 2)
        sigma = np.tile([1.0, -1.0], self.n_dimers)
        return (2 * cells - self.n_dimers - 1) / 2 - self.r / 2 * sigma

    def __str__(self):
        return f"SSH[N={self.n_dimers}; v={self.v}; w={self.w}; r={self.r}]"


class StateVector:
    """Single-particle state on a chain, indexed by ``(cell, sublattice)``."""

    def __init__(self, amplitudes, geom: ChainGeometry):
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        """Site amplitudes in the cell-major basis."""
        self.geom = geom
        """Chain the state lives on."""

        if self.amplitudes.shape != (geom.n_sites,):
            raise ContractError(
                f"state has {self.amplitudes.shape} amplitudes, "
                f"expected {geom.n_sites}"
            )

    @staticmethod
    def uniform(geom: ChainGeometry) -> "StateVector":
        """:returns: Normalized state with equal weight on every site."""
        return StateVector(np.full(geom.n_sites, 1 / np.sqrt(geom.n_sites)), geom)

    def __getitem__(self, key: Tuple[int, str]) -> complex:
        return complex(self.amplitudes[self.geom.site(*key)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise ContractError("cannot normalize a zero state")
        return StateVector(self.amplitudes / n, self.geom)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def hopping_matrix(
    n_dimers: int, v: Union[float, complex], w: Union[float, complex], periodic=False
) -> np.ndarray:
    """
    SSH hopping matrix with (possibly complex) intra-cell hopping `v` on the
    ``(ℓA, ℓB)`` elements and inter-cell hopping `w` on the forward
    ``((ℓ+1)A, ℓB)`` elements. Hermitian conjugates fill the lower elements.

    :param periodic: Close the chain by connecting ``1A`` to ``NB``.
    """

    dtype = np.result_type(type(v), type(w), float)
    n = 2 * n_dimers
    h = np.zeros((n, n), dtype=dtype)
    a = np.arange(0, n, 2)
    b = a + 1
    h[a, b] = v
    h[b, a] = np.conj(v)
    h[a[1:], b[:-1]] = w
    h[b[:-1], a[1:]] = np.conj(w)
    if periodic:
        h[0, n - 1] += w
        h[n - 1, 0] += np.conj(w)
    return h


def build_static_hamiltonian(geom: ChainGeometry) -> np.ndarray:
    """:returns: Real symmetric ``2N x 2N`` SSH Hamiltonian of an open chain."""
    return hopping_matrix(geom.n_dimers, float(geom.v), float(geom.w))


def build_periodic_hamiltonian(geom: ChainGeometry) -> np.ndarray:
    """:returns: SSH Hamiltonian with periodic boundary conditions (bulk problem)."""
    return hopping_matrix(geom.n_dimers, float(geom.v), float(geom.w), periodic=True)


def chiral_operator(geom: ChainGeometry) -> np.ndarray:
    """:returns: Sublattice operator (+1 on A, -1 on B)."""
    return np.diag(np.tile([1.0, -1.0], geom.n_dimers))


def edge_profile(probabilities, n_dimers: int, n_edge_cells: int) -> np.ndarray:
    """
    Probability on the first and last `n_edge_cells` cells for each row of
    site-probability `probabilities` (last axis has ``2N`` entries).
    """
    p = np.asarray(probabilities, dtype=float)
    cells = p.reshape(p.shape[:-1] + (n_dimers, 2)).sum(axis=-1)
    left = cells[..., :n_edge_cells].sum(axis=-1)
    right = cells[..., n_dimers - n_edge_cells :].sum(axis=-1)
    return left + right


def edge_weight(
    state: Union[StateVector, np.ndarray], geom: ChainGeometry, n_edge_cells: int
) -> float:
    """
    :returns: Total probability of a normalized state on the first and last
        `n_edge_cells` unit cells.
    :raises: :py:class:`flossh.common.ContractError` for unnormalized states or
        too many edge cells.
    """

    if not isinstance(state, StateVector):
        state = StateVector(state, geom)
    if not 1 <= n_edge_cells <= geom.n_dimers / 2:
        raise ContractError(
            f"n_edge_cells must lie in 1..N/2 "
            f"(got {n_edge_cells} for N={geom.n_dimers})"
        )
    norm = state.norm() ** 2
    if abs(norm - 1) > NORM_TOLERANCE:
        raise ContractError(f"state is not normalized (|ψ|² = {norm})")
    return float(edge_profile(state.probabilities(), geom.n_dimers, n_edge_cells))


def bulk_bands(v_eff: float, w_eff: float, q) -> Tuple[float, float]:
    """
    :returns: Lower and upper bulk bands ``∓sqrt(v² + w² + 2vw cos q)`` at
        quasi-momentum `q`.
    """
    e2 = v_eff**2 + w_eff**2 + 2 * v_eff * w_eff * np.cos(q)
    e = np.sqrt(np.maximum(e2, 0.0))
    if np.ndim(e):
        return -e, e
    return -float(e), float(e)


def static_spectrum(geom: ChainGeometry):
    """:returns: Eigenvalues (ascending) and eigenvectors of the static chain."""
    energies, states = np.linalg.eigh(build_static_hamiltonian(geom))
    log.trace("[lattice] {}: E= [{:.4f}, {:.4f}]", geom, energies[0], energies[-1])
    return energies, states
