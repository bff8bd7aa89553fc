"""Shared fixtures: chain spectra are expensive, so entropy summaries for each
(g, h, n) are computed once per session and reused across test modules."""

from dataclasses import dataclass

import numpy as np
import pytest

from eigenent.eigensolve import diagonalize_sectors
from eigenent.entanglement import average_eigenstate_entropy
from eigenent.hamiltonian import (build_chaotic_ising, infinite_temperature_moment,
                                  local_term_norm)


@dataclass(frozen=True)
class ChainSummary:
    """Eigenvalues, sector labels, and per-eigenstate entropies at every cut
    m = 1..n/2 for one chaotic-chain parameter point (eigenvectors dropped)."""

    n: int
    g: float
    h: float
    eigenvalues: np.ndarray
    sectors: np.ndarray
    entropies: dict  # m -> per-eigenstate entropy array, aligned with eigenvalues
    local_norm: float
    moment: float
    residual_degeneracies: int

    def sbar(self, m: int) -> float:
        return float(np.mean(self.entropies[m]))


@pytest.fixture(scope="session")
def chain_summary():
    cache = {}

    def get(n: int, g: float = 1.05, h: float = 0.5) -> ChainSummary:
        key = (n, g, h)
        if key not in cache:
            H = build_chaotic_ising(n, g, h)
            spectrum = diagonalize_sectors(H, cap=14)
            entropies = {}
            for m in range(1, n // 2 + 1):
                _, records = average_eigenstate_entropy(spectrum, m)
                entropies[m] = np.array([r.entropy for r in records])
            cache[key] = ChainSummary(
                n=n, g=g, h=h,
                eigenvalues=spectrum.eigenvalues.copy(),
                sectors=spectrum.sectors.copy(),
                entropies=entropies,
                local_norm=local_term_norm(H),
                moment=infinite_temperature_moment(H),
                residual_degeneracies=spectrum.residual_degeneracies,
            )
        return cache[key]

    return get
