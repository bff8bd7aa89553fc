"""Full spectral decomposition, dense or block-by-block in momentum sectors.

The momentum basis state built on an orbit representative a with period R is
    |a(k)> = R^{-1/2} sum_{l=0}^{R-1} exp(-2 pi i k l / n) T^l |a>,
allowed whenever k*R = 0 (mod n); it satisfies T|a(k)> = exp(+2 pi i k/n)|a(k)>.
The dense Hermitian eigensolver behind everything is a single narrow backend
(`eigh_backend`), currently LAPACK via numpy.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from .basis import OrbitTables, orbit_tables
from .hamiltonian import ChainHamiltonian, _string_action, local_term_norm

DENSE_CAP_DEFAULT = 12
SECTOR_CAP_DEFAULT = 16
RESIDUAL_RTOL = 1e-8


class BackendError(RuntimeError):
    """Dense eigensolver backend failure."""


def eigh_backend(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition: eigenvalues ascending, orthonormal columns."""
    try:
        return np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise BackendError(f"dense eigensolver failed: {exc}") from exc


@dataclass(frozen=True)
class MomentumBlock:
    """Dense Hermitian block of H restricted to one momentum sector."""

    k: int
    n: int
    representatives: np.ndarray  # orbit representatives compatible with k
    periods: np.ndarray
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.representatives)


@dataclass
class Spectrum:
    """Ascending eigenvalues with eigenvectors lifted to the full 2**n space.

    sectors[j] is the momentum index of eigenstate j (-1 for a dense,
    unsymmetrized solve).  residual_degeneracies counts near-coincident
    adjacent eigenvalues left unresolved inside a single sector.
    """

    n: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    sectors: np.ndarray
    residual_degeneracies: int = 0

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _count_residual_degeneracies(eigenvalues: np.ndarray, scale: float) -> int:
    if len(eigenvalues) < 2:
        return 0
    tol = 1e-12 * max(scale, 1.0)
    return int(np.sum(np.abs(np.diff(np.sort(eigenvalues))) <= tol))


def diagonalize_dense(H: ChainHamiltonian, cap: int = DENSE_CAP_DEFAULT) -> Spectrum:
    """Unsymmetrized full diagonalization on the 2**n space.

    A purely diagonal H (no off-diagonal terms at all) is returned in the
    z-product basis, which is declared canonical in that degenerate case.
    """
    if H.n > cap:
        raise ValueError(
            f"dense diagonalization refused: n={H.n} exceeds the configured cap "
            f"{cap} (2^{H.n} x 2^{H.n} matrix); raise `cap` explicitly if intended"
        )
    M = H.dense_matrix()
    d = H.dim
    off = M - np.diag(np.diag(M))
    if not off.any():
        diag = np.real(np.diag(M))
        order = np.argsort(diag, kind="stable")
        vecs = np.zeros((d, d), dtype=np.complex128)
        vecs[order, np.arange(d)] = 1.0
        eigenvalues = diag[order]
    else:
        eigenvalues, vecs = eigh_backend(M)
    scale = float(np.max(np.abs(eigenvalues))) if d else 0.0
    return Spectrum(
        n=H.n,
        eigenvalues=eigenvalues,
        eigenvectors=vecs,
        sectors=np.full(d, -1, dtype=np.int64),
        residual_degeneracies=_count_residual_degeneracies(eigenvalues, scale),
    )


def momentum_block(H: ChainHamiltonian, k: int, tables: OrbitTables | None = None) -> MomentumBlock:
    """Assemble the dense Hermitian block of H in momentum sector k."""
    if not H.translation_invariant:
        raise ValueError("momentum sectors require a translation-invariant H; "
                         "use diagonalize_dense instead")
    n = H.n
    if tables is None:
        tables = orbit_tables(n)
    periods_all = tables.period_of
    reps = np.array(
        [o.representative for o in tables.orbits if (k * o.period) % n == 0],
        dtype=np.int64,
    )
    dim = len(reps)
    index_in_block = np.full(H.dim, -1, dtype=np.int64)
    index_in_block[reps] = np.arange(dim)
    Ra = periods_all[reps].astype(np.float64)
    block = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim)
    for xm, ym, zm, coeff in H.pauli_strings():
        target, amp = _string_action(reps, xm, ym, zm, coeff)
        b_rep = tables.rep_of[target]
        rows = index_in_block[b_rep]
        ok = rows >= 0  # orbits incompatible with k project to zero
        if not np.any(ok):
            continue
        t = tables.shift_of[target[ok]]
        Rb = periods_all[target[ok]].astype(np.float64)
        phase = np.exp(-2j * np.pi * k * t / n) * np.sqrt(Ra[ok] / Rb)
        np.add.at(block, (rows[ok], cols[ok]), amp[ok] * phase)
    return MomentumBlock(k=k, n=n, representatives=reps, periods=periods_all[reps].copy(), matrix=block)


def lift_matrix(block: MomentumBlock) -> scipy.sparse.csr_matrix:
    """Sparse map from block coordinates to full-space amplitudes."""
    n, k = block.n, block.k
    rows, cols, vals = [], [], []
    for idx, (rep, R) in enumerate(zip(block.representatives, block.periods)):
        s = int(rep)
        R = int(R)
        norm = 1.0 / np.sqrt(R)
        for l in range(R):
            rows.append(s)
            cols.append(idx)
            vals.append(np.exp(-2j * np.pi * k * l / n) * norm)
            s = ((s << 1) | (s >> (n - 1))) & ((1 << n) - 1)
    return scipy.sparse.csr_matrix(
        (vals, (rows, cols)), shape=(1 << n, block.dim), dtype=np.complex128
    )


def diagonalize_sectors(
    H: ChainHamiltonian,
    cap: int = SECTOR_CAP_DEFAULT,
    threads: int = 1,
) -> Spectrum:
    """Diagonalize block-by-block in momentum sectors and lift eigenvectors.

    Blocks are independent and may be solved in parallel; results are merged
    in fixed momentum order, so the output is identical for any `threads`.
    """
    if not H.translation_invariant:
        raise ValueError("H is not translation invariant; use diagonalize_dense")
    if H.n > cap:
        raise ValueError(
            f"sector diagonalization refused: n={H.n} exceeds the configured cap {cap}"
        )
    n = H.n
    d = H.dim
    tables = orbit_tables(n)

    def solve(k: int):
        block = momentum_block(H, k, tables)
        w, v = eigh_backend(block.matrix)
        return block, w, v

    ks = list(range(n))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            solved = list(pool.map(solve, ks))
    else:
        solved = [solve(k) for k in ks]

    eigenvalues = np.concatenate([w for _, w, _ in solved])
    sectors = np.concatenate(
        [np.full(len(w), k, dtype=np.int64) for k, (_, w, _) in zip(ks, solved)]
    )
    order = np.argsort(eigenvalues, kind="stable")
    # lift each block's eigenvectors straight into their sorted columns,
    # so peak memory is one full matrix plus a single lifted block
    vectors = np.empty((d, d), dtype=np.complex128)
    positions = np.empty(d, dtype=np.int64)
    positions[order] = np.arange(d)
    offset = 0
    for block, w, v in solved:
        cols = positions[offset:offset + block.dim]
        vectors[:, cols] = lift_matrix(block) @ v
        offset += block.dim
    scale = float(np.max(np.abs(eigenvalues)))
    degen = sum(_count_residual_degeneracies(w, scale) for _, w, _ in solved)
    return Spectrum(
        n=n,
        eigenvalues=eigenvalues[order],
        eigenvectors=vectors,
        sectors=sectors[order],
        residual_degeneracies=degen,
    )


def residual_norms(H: ChainHamiltonian, spectrum: Spectrum) -> np.ndarray:
    """||H v_j - E_j v_j||_2 for each eigenpair (dense check, small n only)."""
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors")
    M = H.dense_matrix()
    R = M @ spectrum.eigenvectors - spectrum.eigenvectors * spectrum.eigenvalues
    return np.linalg.norm(R, axis=0)


def hamiltonian_norm_bound(H: ChainHamiltonian) -> float:
    """Cheap upper bound ||H|| <= sum_i ||H_i||, used to scale residual checks."""
    return float(sum(local_term_norm(H, i) for i in range(1, H.n + 1)))


def save_spectrum(path, spectrum: Spectrum, key: dict, include_eigenvectors: bool = False) -> None:
    """Persist a spectrum keyed by model parameters (see load_spectrum)."""
    payload = {
        "eigenvalues": spectrum.eigenvalues,
        "sectors": spectrum.sectors,
        "n": np.int64(spectrum.n),
        "residual_degeneracies": np.int64(spectrum.residual_degeneracies),
        "key_json": np.bytes_(json.dumps(key, sort_keys=True).encode()),
        "has_eigenvectors": np.bool_(include_eigenvectors),
    }
    if include_eigenvectors:
        if spectrum.eigenvectors is None:
            raise ValueError("spectrum carries no eigenvectors to persist")
        payload["eigenvectors"] = spectrum.eigenvectors
    np.savez_compressed(path, **payload)


def load_spectrum(path) -> tuple[Spectrum, dict]:
    """Load a persisted spectrum; eigenvectors are None unless they were saved."""
    with np.load(path) as data:
        key = json.loads(bytes(data["key_json"]).decode())
        vecs = data["eigenvectors"] if bool(data["has_eigenvectors"]) else None
        spec = Spectrum(
            n=int(data["n"]),
            eigenvalues=data["eigenvalues"],
            eigenvectors=vecs,
            sectors=data["sectors"],
            residual_degeneracies=int(data["residual_degeneracies"]),
        )
    return spec, key
