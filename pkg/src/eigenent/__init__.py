"""Eigenstate entanglement toolkit for chaotic spin-1/2 chains.

Full exact diagonalization (dense or in translation sectors), von Neumann
entanglement entropies averaged over all eigenstates, Haar-random reference
ensembles, and the closed-form bounds and predictions they are checked
against.
"""

__version__ = "0.1.0"

from . import basis, eigensolve, entanglement, hamiltonian, random_states, theory

__all__ = [
    "basis",
    "hamiltonian",
    "eigensolve",
    "entanglement",
    "random_states",
    "theory",
    "__version__",
]
