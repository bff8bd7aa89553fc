"""Schmidt spectra, von Neumann entropies, two-site reduced density matrices,
and entropy averages over full eigenspectra.

Subsystem A = spins 1..m = the m low-order bits of the basis mask, so the
Schmidt decomposition is a reshape of the amplitude vector.  All entropies
are in nats.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .basis import cyclic_shift
from .eigensolve import Spectrum
from .hamiltonian import ChainHamiltonian

NORM_ATOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over the 2**n computational basis."""

    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        if len(self.amplitudes) != 1 << self.n:
            raise ValueError(f"amplitude vector of length {len(self.amplitudes)} "
                             f"does not match n={self.n}")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_ATOL}")

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "PureState":
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        n = int(len(amplitudes)).bit_length() - 1
        return cls(amplitudes=amplitudes, n=n)


def _as_amplitudes(state) -> tuple[np.ndarray, int]:
    if isinstance(state, PureState):
        return state.amplitudes, state.n
    v = np.asarray(state, dtype=np.complex128)
    d = len(v)
    n = d.bit_length() - 1
    if 1 << n != d:
        raise ValueError(f"state dimension {d} is not a power of two")
    return v, n


def schmidt_spectrum(state, m: int) -> np.ndarray:
    """Squared Schmidt coefficients across the cut A = spins 1..m, descending."""
    v, n = _as_amplitudes(state)
    if not 1 <= m <= n - 1:
        raise ValueError(f"subsystem size m={m} outside 1..{n - 1}")
    mat = v.reshape(1 << (n - m), 1 << m)  # row = B bits, column = A bits
    s = np.linalg.svd(mat, compute_uv=False)
    return s * s


def von_neumann_entropy(probabilities) -> float:
    """-sum p ln p with 0 ln 0 = 0; input must be a probability vector."""
    p = np.asarray(probabilities, dtype=float)
    if np.any(p < -1e-12):
        raise ValueError("Schmidt spectrum has an eigenvalue below -1e-12")
    total = p.sum()
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"spectrum sums to {total}, not normalized within 1e-8")
    p = np.where(p < 0.0, 0.0, p)
    if abs(total - 1.0) <= 1e-10 and total != 1.0:
        p = p / p.sum()
    nz = p[p > 0.0]
    return float(-np.dot(nz, np.log(nz)))


def _batched_entropies(states: np.ndarray, n: int, m: int) -> np.ndarray:
    """Entropies at cut m for a (count, 2**n) stack of normalized states."""
    count = states.shape[0]
    mats = states.reshape(count, 1 << (n - m), 1 << m)
    s = np.linalg.svd(mats, compute_uv=False)
    p = s * s
    p /= p.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(p), 0.0)
    return -terms.sum(axis=1)


def two_site_rdm(state, i: int) -> np.ndarray:
    """Reduced density matrix of spins (i, i+1), index = 2*b_{i+1} + b_i."""
    v, n = _as_amplitudes(state)
    if not 1 <= i <= n:
        raise ValueError(f"site index {i} outside 1..{n}")
    p = i - 1
    q = i % n
    arr = v.reshape([2] * n)  # axis a holds bit (n - 1 - a)
    arr = np.moveaxis(arr, [n - 1 - q, n - 1 - p], [0, 1])
    mat = arr.reshape(4, 1 << (n - 2))
    return mat @ mat.conj().T


def local_energy(state, H: ChainHamiltonian, i: int) -> float:
    """<state| H_i |state> via the two-site reduced density matrix."""
    rho = two_site_rdm(state, i)
    val = complex(np.trace(rho @ H.term_matrix(i)))
    return val.real


@dataclass(frozen=True)
class EntropyRecord:
    """Per-eigenstate entanglement entry used by the bound checks."""

    index: int
    energy: float
    m: int
    entropy: float
    sector: int


def average_eigenstate_entropy(spectrum: Spectrum, m: int) -> tuple[float, list[EntropyRecord]]:
    """Unweighted mean of S(rho_{j,A}) over all eigenstates, plus the records."""
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors; rerun with vectors kept")
    n = spectrum.n
    ent = _batched_entropies(np.ascontiguousarray(spectrum.eigenvectors.T), n, m)
    records = [
        EntropyRecord(index=j, energy=float(spectrum.eigenvalues[j]), m=m,
                      entropy=float(ent[j]), sector=int(spectrum.sectors[j]))
        for j in range(spectrum.dim)
    ]
    return float(np.mean(ent)), records


def cut_averaged_entropy(spectrum: Spectrum, m: int) -> float:
    """Entropy averaged over all eigenstates and all n cyclic length-m windows."""
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors; rerun with vectors kept")
    n = spectrum.n
    d = spectrum.dim
    shift = np.array([cyclic_shift(s, n) for s in range(d)], dtype=np.int64)
    states = np.ascontiguousarray(spectrum.eigenvectors.T)
    means = np.empty(n)
    rotated = states
    for r in range(n):
        means[r] = np.mean(_batched_entropies(rotated, n, m))
        if r + 1 < n:
            nxt = np.empty_like(rotated)
            nxt[:, shift] = rotated
            rotated = nxt
    return float(np.mean(means))


def entropy_records_to_csv(records, path) -> None:
    """Stream EntropyRecords to CSV with columns (j, energy, m, entropy, sector)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j", "energy", "m", "entropy", "sector"])
        for r in records:
            writer.writerow([r.index, f"{r.energy:.17g}", r.m, f"{r.entropy:.17g}", r.sector])
