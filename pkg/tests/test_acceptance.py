"""Acceptance suite: one test per primary criterion, each printing a
[PASS]/[FAIL] line with the measured numbers before asserting at the stated
tolerance.  Run with `pytest tests/test_acceptance.py -v -s`."""

import math
import time

import numpy as np
import pytest

from eigenent import theory
from eigenent.eigensolve import diagonalize_dense, diagonalize_sectors
from eigenent.entanglement import (average_eigenstate_entropy,
                                   cut_averaged_entropy, schmidt_spectrum,
                                   von_neumann_entropy)
from eigenent.experiments import ExperimentConfig, run_figure1
from eigenent.hamiltonian import (apply_to_state, build_chaotic_ising,
                                  build_disordered)
from eigenent.random_states import SeededSampler, page_average, sector_haar_average

LN2 = math.log(2.0)
GH_SETS = ((1.05, 0.5), (0.905, 0.809))


def report(ok: bool, name: str, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}", flush=True)


def test_page_exactness():
    t0 = time.monotonic()
    exact_22 = theory.page_entropy(2, 2)
    err_exact = abs(exact_22 - 1.0 / 3.0)
    est = page_average(4, 32, 2000, SeededSampler(2024))
    err_mc = abs(est.mean - theory.page_entropy(4, 32))
    elapsed = time.monotonic() - t0
    ok = err_exact <= 1e-15 and err_mc <= 5e-3 and elapsed < 10.0
    report(ok, "page exactness",
           f"|page(2,2)-1/3|={err_exact:.2e} (<=1e-15), "
           f"|MC-exact|={err_mc:.2e} (<=5e-3), {elapsed:.1f}s (<10s)")
    assert err_exact <= 1e-15
    assert err_mc <= 5e-3
    assert elapsed < 10.0


def test_spectral_identity(chain_summary):
    devs = {}
    for n in (8, 10):
        data = chain_summary(n)
        expected = n * (1.0 + 1.05**2 + 0.5**2)
        devs[n] = abs(float(np.mean(data.eigenvalues**2)) - expected) / expected
    ok = all(d <= 1e-8 for d in devs.values())
    report(ok, "spectral identity",
           ", ".join(f"n={n}: rel={d:.2e}" for n, d in devs.items()) + " (<=1e-8)")
    assert all(d <= 1e-8 for d in devs.values())


def test_lemma2_suite(chain_summary):
    data = chain_summary(10)
    worst = math.inf
    violations = 0
    for m in (2, 4):
        bounds = np.array([
            theory.eigenstate_entropy_bound(m, 10, e / data.local_norm)
            for e in data.eigenvalues
        ])
        slack = bounds - data.entropies[m]
        worst = min(worst, float(slack.min()))
        violations += int(np.sum(slack < -1e-9))
    ok = violations == 0
    report(ok, "per-eigenstate bound suite",
           f"n=10, m in (2,4): {violations} violations over 2048 checks, "
           f"min slack {worst:.3e} (tol -1e-9)")
    assert violations == 0


def test_theorem3_suite(chain_summary):
    lines = []
    ok = True
    for g, h in GH_SETS:
        for n in (8, 10, 12):
            data = chain_summary(n, g, h)
            m = n // 2
            bound = theory.average_entropy_bound(m, n, data.moment, data.local_norm)
            slack = bound - data.sbar(m)
            ok = ok and slack > 0.0
            lines.append(f"(g,h)=({g},{h}) n={n}: slack={slack:.4f}")
    report(ok, "averaged bound suite", "; ".join(lines) + " (all > 0)")
    assert ok


def test_corollary3_disordered():
    deficits = {}
    for seed in (1, 2, 3, 4, 5):
        H = build_disordered(10, 1.05, 0.5, 0.2, seed)
        spectrum = diagonalize_dense(H, cap=12)
        deficits[seed] = 5 * LN2 - cut_averaged_entropy(spectrum, 5)
    ok = all(c > 0.01 for c in deficits.values())
    report(ok, "disordered cut-averaged bound",
           ", ".join(f"seed {s}: deficit={c:.4f}" for s, c in deficits.items())
           + " (all > 0.01)")
    assert ok


def test_appendix_a_grid():
    eps = np.arange(-1000, 1001) / 1000.0
    worst = math.inf
    violations = 0
    for e in eps:
        gap = theory.two_site_entropy_bound(float(e)) - theory.two_site_entropy_max(float(e))
        worst = min(worst, gap)
        if gap < -1e-12:
            violations += 1
    ok = violations == 0
    report(ok, "two-site candidate grid",
           f"2001 grid points, {violations} violations, min gap {worst:.3e} (tol -1e-12)")
    assert violations == 0


def test_appendix_b_integrals():
    t0 = time.monotonic()
    zero = theory.quadrature(
        lambda J: math.exp(-2.0 * J * J) * (1.0 - 4.0 * J * J), -8.0, 8.0, 1e-9)
    const = theory.average_over_sectors(0.5) + LN2 / 2.0
    err_const = abs(const - (-2.0 / math.pi))
    elapsed = time.monotonic() - t0
    ok = abs(zero) <= 1e-9 and err_const <= 1e-6 and elapsed < 1.0
    report(ok, "gaussian sector integrals",
           f"zero integral={zero:.2e} (<=1e-9), "
           f"|const+2/pi|={err_const:.2e} (<=1e-6), {elapsed:.2f}s (<1s)")
    assert abs(zero) <= 1e-9
    assert err_const <= 1e-6
    assert elapsed < 1.0


def test_toy_model_targets():
    result = sector_haar_average(14, 7, 100, SeededSampler(12345))
    agg_target = 6.5 * LN2 - 2.0 / math.pi
    sec_target = 6.5 * LN2 - 0.25
    mid = [s for s in result.sectors if s.j == 7][0]
    agg_dev = abs(result.mean - agg_target)
    sec_dev = abs(mid.mean - sec_target)
    ok = (agg_dev <= 0.1 and result.std_error <= 0.1 / 3.0
          and sec_dev <= 0.05 and mid.std_error <= 0.05 / 3.0)
    report(ok, "sector-randomized ensemble",
           f"aggregate {result.mean:.4f} vs {agg_target:.4f} "
           f"(dev {agg_dev:.4f} <= 0.1, se {result.std_error:.4f} <= {0.1 / 3:.3f}); "
           f"j=7 {mid.mean:.4f} vs {sec_target:.4f} "
           f"(dev {sec_dev:.4f} <= 0.05, se {mid.std_error:.4f} <= {0.05 / 3:.4f})")
    assert agg_dev <= 0.1 and result.std_error <= 0.1 / 3.0
    assert sec_dev <= 0.05 and mid.std_error <= 0.05 / 3.0


def test_figure1_trend():
    t0 = time.monotonic()
    cfg = ExperimentConfig(experiment="figure1", n_list=(8, 10, 12), seed=0,
                           g=1.05, h=0.5)
    table = run_figure1(cfg)
    elapsed = time.monotonic() - t0
    target = LN2 / 2.0 + 2.0 / math.pi
    devs = []
    for n in (8, 10, 12):
        corr = table.values("correction", n=n, f=0.5)[0].value
        devs.append(abs(corr - target))
    nonincreasing = all(devs[i + 1] <= devs[i] for i in range(len(devs) - 1))
    positive = all(
        r.value > 0.0 for r in table.values("correction") if r.f is not None and r.f < 0.5)
    ok = nonincreasing and positive and elapsed < 1800.0
    report(ok, "finite-size trend at half cut",
           f"|corr-({target:.4f})| over n=(8,10,12): "
           + ", ".join(f"{d:.4f}" for d in devs)
           + f"; nonincreasing={nonincreasing}, f<1/2 corrections positive={positive}, "
           f"{elapsed:.0f}s (<1800s)")
    assert positive
    assert elapsed < 1800.0
    # Known-red check: the measured corrections cross the asymptote between
    # n=8 and n=10 and overshoot at n=12 (for every degeneracy-resolution
    # convention tried), so the deviation is not monotone on this size window.
    assert nonincreasing, (
        "deviation sequence "
        + ", ".join(f"{d:.4f}" for d in devs)
        + " is not nonincreasing over n=(8,10,12)"
    )


def test_oracle_equivalences():
    H = build_chaotic_ising(8, 1.05, 0.5)
    dense = diagonalize_dense(H)
    sect = diagonalize_sectors(H)
    spec_dev = float(np.max(np.abs(np.sort(dense.eigenvalues) - np.sort(sect.eigenvalues))))

    rng = np.random.default_rng(42)
    ent_dev = 0.0
    for _ in range(50):
        v = rng.normal(size=1 << 10) + 1j * rng.normal(size=1 << 10)
        v /= np.linalg.norm(v)
        svd_entropy = von_neumann_entropy(schmidt_spectrum(v, 4))
        mat = v.reshape(1 << 6, 1 << 4)
        rho = mat.conj().T @ mat
        trace_entropy = von_neumann_entropy(np.clip(np.linalg.eigvalsh(rho), 0.0, None))
        ent_dev = max(ent_dev, abs(svd_entropy - trace_entropy))

    M = H.dense_matrix()
    apply_dev = 0.0
    for _ in range(5):
        v = rng.normal(size=256) + 1j * rng.normal(size=256)
        v /= np.linalg.norm(v)
        apply_dev = max(apply_dev, float(np.max(np.abs(apply_to_state(H, v) - M @ v))))

    ok = spec_dev <= 1e-8 and ent_dev <= 1e-10 and apply_dev <= 1e-12
    report(ok, "oracle equivalences",
           f"sector-vs-dense spectra dev={spec_dev:.2e} (<=1e-8), "
           f"SVD-vs-partial-trace dev={ent_dev:.2e} (<=1e-10), "
           f"matrix-free-vs-dense dev={apply_dev:.2e} (<=1e-12)")
    assert spec_dev <= 1e-8
    assert ent_dev <= 1e-10
    assert apply_dev <= 1e-12


def test_tightness_band_m2(chain_summary):
    values = {}
    for n in (8, 10, 12):
        data = chain_summary(n)
        values[n] = n * (2 * LN2 - data.sbar(2))
    spread = max(values.values()) / min(values.values())
    ok = spread <= 3.0
    report(ok, "small-subsystem tightness",
           ", ".join(f"n={n}: {v:.4f}" for n, v in values.items())
           + f"; max/min={spread:.2f} (<=3)")
    assert spread <= 3.0
