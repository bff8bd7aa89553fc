"""Haar-random states, and random states constrained to magnetization sectors.

The constrained ensemble applies an independent Haar-random rotation inside
every fixed-magnetization subspace of sum_i sigma^z_i; sampling one state per
draw is statistically equivalent to sampling columns of the full random
unitary, and avoids materializing it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import comb

import numpy as np

from .basis import enumerate_sector
from .entanglement import PureState, schmidt_spectrum, von_neumann_entropy


class SeededSampler:
    """Reproducible counter-based RNG (Philox) with derivable substreams.

    Identical (seed, key) pairs reproduce identical sample sequences
    bit-for-bit; substream(j, t) gives an independent stream for task (j, t),
    so parallel sampling plans stay deterministic.
    """

    def __init__(self, seed: int, _key: tuple = ()):
        self.seed = int(seed)
        self._key = tuple(int(k) for k in _key)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self._key)
        self._rng = np.random.Generator(np.random.Philox(seq))

    def substream(self, *key: int) -> "SeededSampler":
        return SeededSampler(self.seed, self._key + key)

    def standard_normal(self, shape) -> np.ndarray:
        return self._rng.standard_normal(shape)

    def complex_normal(self, size: int) -> np.ndarray:
        z = self._rng.standard_normal((2, size))
        return z[0] + 1j * z[1]


def haar_state(d: int, sampler: SeededSampler) -> np.ndarray:
    """Haar-random pure state on a d-dimensional space (normalized Gaussians)."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    z = sampler.complex_normal(d)
    return z / np.linalg.norm(z)


def _bipartite_entropy(v: np.ndarray, dA: int, dB: int) -> float:
    s = np.linalg.svd(v.reshape(dA, dB), compute_uv=False)
    return von_neumann_entropy(s * s)


@dataclass(frozen=True)
class PageEstimate:
    """Monte Carlo estimate of the mean random-state entropy for (dA, dB)."""

    dA: int
    dB: int
    trials: int
    mean: float
    std_error: float
    sample_std: float


def page_average(dA: int, dB: int, trials: int, sampler: SeededSampler,
                 swap: bool = False) -> PageEstimate:
    """Sample mean of S(rho_A) over Haar states on dimension dA*dB."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if dA > dB:
        if not swap:
            raise ValueError(f"dA={dA} > dB={dB}; pass swap=True to reorient")
        dA, dB = dB, dA
    vals = np.empty(trials)
    for t in range(trials):
        vals[t] = _bipartite_entropy(haar_state(dA * dB, sampler), dA, dB)
    std = float(np.std(vals, ddof=1)) if trials > 1 else 0.0
    return PageEstimate(dA=dA, dB=dB, trials=trials, mean=float(np.mean(vals)),
                        std_error=std / np.sqrt(trials), sample_std=std)


@dataclass(frozen=True)
class SectorRandomState:
    """Haar-random state on the j-up-spins subspace, embedded in 2**n dims.

    Amplitudes are exactly zero outside the sector.
    """

    n: int
    j: int
    amplitudes: np.ndarray

    def pure(self) -> PureState:
        return PureState(amplitudes=self.amplitudes, n=self.n)


def sector_random_state(n: int, j: int, sampler: SeededSampler) -> SectorRandomState:
    """Draw a Haar-random state supported on the (n, j) magnetization sector."""
    sector = enumerate_sector(n, j)
    amps = haar_state(sector.dim, sampler)
    full = np.zeros(1 << n, dtype=np.complex128)
    full[sector.states] = amps
    return SectorRandomState(n=n, j=j, amplitudes=full)


@dataclass(frozen=True)
class BlockPopulation:
    """One fixed-magnetization-of-A block of rho_A: weight and block entropy."""

    k: int
    weight: float
    entropy: float


def block_populations(state: SectorRandomState, m: int) -> list[BlockPopulation]:
    """Decompose rho_A of a sector state into blocks by up-spin count k in A.

    The reconstruction identity
        S(rho_A) = sum_k weight_k * (S_k - ln weight_k)
    holds because rho_A is block diagonal in the A-magnetization.
    """
    n, j = state.n, state.j
    if not 1 <= m <= n - 1:
        raise ValueError(f"subsystem size m={m} outside 1..{n - 1}")
    lo = max(0, m - n + j)
    hi = min(m, j)
    out = []
    for k in range(lo, hi + 1):
        a_states = enumerate_sector(m, k).states
        b_states = enumerate_sector(n - m, j - k).states
        mat = state.amplitudes[(b_states[:, None] << m) | a_states[None, :]]
        weight = float(np.sum(np.abs(mat) ** 2))
        if weight <= 0.0:
            out.append(BlockPopulation(k=k, weight=0.0, entropy=0.0))
            continue
        s = np.linalg.svd(mat / np.sqrt(weight), compute_uv=False)
        out.append(BlockPopulation(k=k, weight=weight, entropy=von_neumann_entropy(s * s)))
    return out


@dataclass(frozen=True)
class SectorEstimate:
    j: int
    dim: int
    samples: int
    mean: float
    std_error: float


@dataclass(frozen=True)
class SectorEnsembleAverage:
    """Dimension-weighted average entropy of the sector-randomized ensemble."""

    n: int
    m: int
    samples_per_sector: int
    sectors: list[SectorEstimate]
    mean: float
    std_error: float

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["j", "dim", "samples", "mean_entropy", "std_error"])
            for s in self.sectors:
                writer.writerow([s.j, s.dim, s.samples,
                                 f"{s.mean:.17g}", f"{s.std_error:.17g}"])


def sector_haar_average(n: int, m: int, samples_per_sector: int,
                        sampler: SeededSampler) -> SectorEnsembleAverage:
    """Monte Carlo average entropy over the per-sector Haar-randomized ensemble.

    Sectors are weighted by their dimension binom(n, j) / 2**n, matching an
    unweighted average over all 2**n ensemble states.  Each draw uses the
    substream (j, sample_index), so results are order-independent.
    """
    if samples_per_sector < 1:
        raise ValueError("need at least one sample per sector")
    d = 1 << n
    sectors = []
    mean = 0.0
    var = 0.0
    for j in range(n + 1):
        dim = comb(n, j)
        if dim == 1:
            # 1-dimensional sector: the state is a basis state, entropy 0
            sectors.append(SectorEstimate(j=j, dim=dim, samples=samples_per_sector,
                                          mean=0.0, std_error=0.0))
            continue
        vals = np.empty(samples_per_sector)
        for t in range(samples_per_sector):
            state = sector_random_state(n, j, sampler.substream(j, t))
            vals[t] = von_neumann_entropy(schmidt_spectrum(state.amplitudes, m))
        se = float(np.std(vals, ddof=1) / np.sqrt(samples_per_sector)) \
            if samples_per_sector > 1 else 0.0
        est = SectorEstimate(j=j, dim=dim, samples=samples_per_sector,
                             mean=float(np.mean(vals)), std_error=se)
        sectors.append(est)
    for est in sectors:
        w = est.dim / d
        mean += w * est.mean
        var += (w * est.std_error) ** 2
    return SectorEnsembleAverage(n=n, m=m, samples_per_sector=samples_per_sector,
                                 sectors=sectors, mean=mean, std_error=float(np.sqrt(var)))
