"""Random-state entanglement: Monte Carlo against the exact mean.

Draws Haar-random bipartite states, compares the sampled average entropy with
the exact harmonic-sum formula, and shows the concentration of the entropy
distribution as the environment grows.
"""

from eigenent.random_states import SeededSampler, page_average
from eigenent.theory import page_asymptotic, page_entropy

sampler = SeededSampler(2024)

print("exact vs Monte Carlo (2000 trials each)")
for dA, dB in [(2, 2), (4, 32), (8, 64)]:
    exact = page_entropy(dA, dB)
    est = page_average(dA, dB, 2000, sampler.substream(dA, dB))
    print(f"  dA={dA:3d} dB={dB:3d}: exact {exact:.6f}   "
          f"MC {est.mean:.6f} +- {est.std_error:.6f}   "
          f"asymptotic {page_asymptotic(dA, dB):.6f}")

print("\nconcentration: sample std of S at dA=4 as dB grows")
for dB in (16, 64, 256):
    est = page_average(4, dB, 500, sampler.substream(0, dB))
    print(f"  dB={dB:4d}: std {est.sample_std:.5f}")
