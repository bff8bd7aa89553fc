"""Translation-invariant (and weakly disordered) 2-local spin-chain Hamiltonians.

H = sum_i H_i with H_i = (one-site Paulis on spin i) + (Pauli pairs on spins
i, i+1), periodic boundary (spin n+1 = spin 1).  All terms are traceless by
construction: there is no identity component in a LocalTermSpec.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import MAX_SITES

# one-site Pauli matrices in the (down, up) basis, so sigma_z = diag(-1, +1)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class LocalTermSpec:
    """Coefficients of H_i: one-site Paulis on spin i, pairs on spins (i, i+1).

    coupling[a, b] multiplies sigma^a_i sigma^b_{i+1} with a, b in (x, y, z).
    """

    field_x: float = 0.0
    field_y: float = 0.0
    field_z: float = 0.0
    coupling: tuple = field(default_factory=lambda: ((0.0,) * 3,) * 3)

    def coupling_array(self) -> np.ndarray:
        return np.asarray(self.coupling, dtype=float).reshape(3, 3)


@dataclass(frozen=True)
class ChainHamiltonian:
    """H = sum_{i=1..n} H_i on a periodic chain; terms[i-1] specifies H_i."""

    n: int
    terms: tuple[LocalTermSpec, ...]
    translation_invariant: bool

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"chain needs at least 2 sites, got n={self.n}")
        if self.n > MAX_SITES:
            raise ValueError(f"n={self.n} exceeds supported {MAX_SITES} sites")
        if len(self.terms) != self.n:
            raise ValueError("need exactly one LocalTermSpec per site")

    @property
    def dim(self) -> int:
        return 1 << self.n

    def pauli_strings(self) -> list[tuple[int, int, int, complex]]:
        """Flatten to (x_mask, y_mask, z_mask, coefficient) Pauli strings."""
        strings = []
        for i, term in enumerate(self.terms):
            p, q = i, (i + 1) % self.n
            for axis, coeff in enumerate((term.field_x, term.field_y, term.field_z)):
                if coeff != 0.0:
                    masks = [0, 0, 0]
                    masks[axis] = 1 << p
                    strings.append((masks[0], masks[1], masks[2], complex(coeff)))
            cpl = term.coupling_array()
            for a in range(3):
                for b in range(3):
                    if cpl[a, b] != 0.0:
                        masks = [0, 0, 0]
                        masks[a] |= 1 << p
                        masks[b] |= 1 << q
                        strings.append((masks[0], masks[1], masks[2], complex(cpl[a, b])))
        return strings

    def term_matrix(self, i: int) -> np.ndarray:
        """4x4 matrix of H_i on spins (i, i+1); basis index = 2*b_{i+1} + b_i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"site index {i} outside 1..{self.n}")
        term = self.terms[i - 1]
        eye = np.eye(2, dtype=np.complex128)
        out = np.zeros((4, 4), dtype=np.complex128)
        for axis, coeff in enumerate((term.field_x, term.field_y, term.field_z)):
            out += coeff * np.kron(eye, _PAULIS[axis])
        cpl = term.coupling_array()
        for a in range(3):
            for b in range(3):
                if cpl[a, b] != 0.0:
                    out += cpl[a, b] * np.kron(_PAULIS[b], _PAULIS[a])
        return out

    def dense_matrix(self) -> np.ndarray:
        """Dense 2**n x 2**n matrix; only sensible at desk scale (n <= ~14)."""
        d = self.dim
        idx = np.arange(d, dtype=np.int64)
        H = np.zeros((d, d), dtype=np.complex128)
        for xm, ym, zm, coeff in self.pauli_strings():
            target, amp = _string_action(idx, xm, ym, zm, coeff)
            H[target, idx] += amp
        return H


def _string_action(masks: np.ndarray, xm: int, ym: int, zm: int, coeff: complex):
    """Vectorized action of one Pauli string on basis states `masks`."""
    flips = xm | ym
    target = masks ^ flips
    py = int(ym).bit_count()
    pz = int(zm).bit_count()
    sign_bits = np.bitwise_count(np.bitwise_and(masks, ym | zm)) + (py + pz)
    amp = coeff * (1j) ** py * np.where(sign_bits % 2 == 0, 1.0, -1.0)
    return target, amp


def build_chaotic_ising(n: int, g: float, h: float) -> ChainHamiltonian:
    """H_i = sigma^z_i sigma^z_{i+1} + g sigma^x_i + h sigma^z_i, periodic.

    Non-integrable (Wigner-Dyson level statistics) for generic g, h.
    """
    coupling = [[0.0] * 3 for _ in range(3)]
    coupling[2][2] = 1.0
    term = LocalTermSpec(field_x=g, field_z=h, coupling=tuple(map(tuple, coupling)))
    return ChainHamiltonian(n=n, terms=(term,) * n, translation_invariant=True)


def build_disordered(n: int, g: float, h_center: float, w: float, seed: int) -> ChainHamiltonian:
    """Chaotic Ising chain with h_i drawn uniformly from [h_center-w, h_center+w].

    Deterministic per seed; w = 0 reproduces build_chaotic_ising exactly.
    """
    if w < 0:
        raise ValueError(f"disorder width must be >= 0, got {w}")
    if w == 0.0:
        return build_chaotic_ising(n, g, h_center)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    hs = h_center + w * rng.uniform(-1.0, 1.0, size=n)
    coupling = [[0.0] * 3 for _ in range(3)]
    coupling[2][2] = 1.0
    coupling = tuple(map(tuple, coupling))
    terms = tuple(
        LocalTermSpec(field_x=g, field_z=float(hi), coupling=coupling) for hi in hs
    )
    return ChainHamiltonian(n=n, terms=terms, translation_invariant=False)


def apply_to_state(H: ChainHamiltonian, v: np.ndarray) -> np.ndarray:
    """Matrix-free H @ v via per-string bit operations; linear in v."""
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (H.dim,):
        raise ValueError(f"state has dimension {v.shape}, expected ({H.dim},)")
    idx = np.arange(H.dim, dtype=np.int64)
    out = np.zeros_like(v)
    for xm, ym, zm, coeff in H.pauli_strings():
        target, amp = _string_action(idx, xm, ym, zm, coeff)
        out[target] += amp * v
    return out


def infinite_temperature_moment(H: ChainHamiltonian) -> float:
    """<H_1^2> at infinite temperature, i.e. tr(H_1^2) / 4 for the two-site term.

    For the chaotic Ising chain this equals 1 + g^2 + h^2 (Pauli orthogonality).
    """
    if not H.translation_invariant:
        raise ValueError("moment of H_1 is defined for translation-invariant H; "
                         "use term_matrix(i) per site instead")
    B = H.term_matrix(1)
    return float(np.trace(B @ B).real) / 4.0


def local_term_norm(H: ChainHamiltonian, i: int = 1) -> float:
    """Operator (spectral) norm of the two-site matrix of H_i."""
    B = H.term_matrix(i)
    return float(np.max(np.abs(np.linalg.eigvalsh(B))))
