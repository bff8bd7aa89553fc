"""Closed-form reference values: the exact mean entropy of Haar-random states,
the conjectured average for chaotic chains, rigorous entropy bounds, the
two-site maximization behind them, and the Gaussian sector asymptotics with
their defining integrals.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import scipy.integrate
from scipy.special import erfcx

LN2 = math.log(2.0)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one entropy-bound evaluation."""

    name: str
    bound: float
    measured: float

    @property
    def slack(self) -> float:
        return self.bound - self.measured

    @property
    def passed(self) -> bool:
        return self.slack >= -1e-9


@dataclass(frozen=True)
class SectorScaling:
    """Continuum coordinates for magnetization sectors: J = j/sqrt(n) - sqrt(n)/2
    and K = k/sqrt(n) - f*sqrt(n)/2 (k restricted to subsystem A)."""

    n: int
    m: int
    j: int
    k: int | None = None

    @property
    def f(self) -> float:
        return self.m / self.n

    @property
    def J(self) -> float:
        rn = math.sqrt(self.n)
        return self.j / rn - rn / 2.0

    @property
    def K(self) -> float:
        if self.k is None:
            raise ValueError("no subsystem magnetization k was given")
        rn = math.sqrt(self.n)
        return self.k / rn - self.f * rn / 2.0


def page_entropy(dA: int, dB: int) -> float:
    """Exact mean entanglement entropy of a Haar-random bipartite pure state.

    sum_{k=dB+1}^{dA dB} 1/k - (dA-1)/(2 dB), evaluated with compensated
    summation so the harmonic tail does not drift.
    """
    if not 1 <= dA <= dB:
        raise ValueError(f"need 1 <= dA <= dB, got ({dA}, {dB})")
    terms = [1.0 / k for k in range(dB + 1, dA * dB + 1)]
    terms.append(-(dA - 1) / (2.0 * dB))
    return math.fsum(terms)


def page_asymptotic(dA: int, dB: int) -> float:
    """Leading asymptotic ln dA - dA/(2 dB); error is O(1/(dA dB))."""
    if dA < 1 or dB < 1:
        raise ValueError("dimensions must be >= 1")
    if dA < 2 or dB < 2:
        warnings.warn("page_asymptotic outside its regime (a local dimension is 1)",
                      stacklevel=2)
    return math.log(dA) - dA / (2.0 * dB)


def universal_entropy(n: int, f: float) -> float:
    """Conjectured average eigenstate entropy m ln2 + ln(1-f)/2 - 2 delta_{f,1/2}/pi.

    f > 1/2 is reflected to 1 - f (the average is mirror symmetric in the
    cut).  The Kronecker delta at f = 1/2 is honored exactly, with no
    smoothing near the point.
    """
    if not 0.0 < f < 1.0:
        raise ValueError(f"subsystem fraction f={f} outside (0, 1)")
    if f > 0.5:
        f = 1.0 - f
    m = f * n
    if abs(m - round(m)) > 1e-9:
        raise ValueError(f"f*n = {m} is not an integer subsystem size")
    m = round(m)
    out = m * LN2 + math.log(1.0 - f) / 2.0
    if f == 0.5:
        out -= 2.0 / math.pi
    return out


def eigenstate_entropy_bound(m: int, n: int, energy: float) -> float:
    """Energy-resolved bound m ln2 - f E^2/(4n) on a single eigenstate's entropy.

    Assumes unit local-term norm: rescale the energy by ||H_1|| first.
    """
    if m % 2 != 0:
        raise ValueError(f"the bound is derived for even m, got m={m}")
    f = m / n
    if f > 0.5:
        raise ValueError(f"need f = m/n <= 1/2, got {f}")
    return m * LN2 - f * energy * energy / (4.0 * n)


def average_entropy_bound(m: int, n: int, moment: float, norm: float) -> float:
    """Bound m ln2 - f <H_1^2>/(4 ||H_1||^2) on the average eigenstate entropy."""
    f = m / n
    if f > 0.5:
        raise ValueError(f"need f = m/n <= 1/2, got {f}")
    if norm <= 0.0:
        raise ValueError("local term norm must be positive")
    return m * LN2 - f * moment / (4.0 * norm * norm)


def _shannon(probs) -> float:
    return -math.fsum(p * math.log(p) for p in probs if p > 0.0)


def two_site_entropy_max(eps: float) -> float:
    """Largest Shannon entropy among the extremal 4-outcome candidates whose
    total deviation from uniform is |eps|.

    Candidates: (1/4 +- eps/4 twice each); (1/4 + eps/2, 1/4 - eps/6 thrice)
    for eps >= -1/2; (1/4 - eps/2, 1/4 + eps/6 thrice) for eps <= 1/2.
    """
    if abs(eps) > 1.0:
        raise ValueError(f"|eps| must be <= 1, got {eps}")
    candidates = [(0.25 + eps / 4.0,) * 2 + (0.25 - eps / 4.0,) * 2]
    if eps >= -0.5:
        candidates.append((0.25 + eps / 2.0,) + (0.25 - eps / 6.0,) * 3)
    if eps <= 0.5:
        candidates.append((0.25 - eps / 2.0,) + (0.25 + eps / 6.0,) * 3)
    return max(_shannon(c) for c in candidates)


def two_site_entropy_bound(eps: float) -> float:
    """Quadratic bound 2 ln2 - eps^2/2 dominating two_site_entropy_max."""
    if abs(eps) > 1.0:
        raise ValueError(f"|eps| must be <= 1, got {eps}")
    return 2.0 * LN2 - eps * eps / 2.0


def erfc(x: float) -> float:
    """Complementary error function 2/sqrt(pi) * int_x^inf exp(-t^2) dt."""
    return math.erfc(x)


def sector_entropy_below_half(n: int, f: float, J: float) -> float:
    """Asymptotic mean entropy of a sector-random state at fraction f < 1/2:
    f n ln2 + f(1 - 4J^2)/2 + ln(1-f)/2."""
    if not 0.0 < f < 0.5:
        raise ValueError(f"valid for 0 < f < 1/2 (got {f}); "
                         "use sector_entropy_at_half at f = 1/2")
    return f * n * LN2 + f * (1.0 - 4.0 * J * J) / 2.0 + math.log(1.0 - f) / 2.0


def sector_entropy_at_half(n: int, J: float) -> float:
    """Asymptotic mean entropy of a sector-random state at f = 1/2:
    (n-1)/2 ln2 + 1/4 + J sqrt(2/pi) - J^2 - exp(2J^2) erfc(-sqrt(2) J)/2.

    Symmetric in J, so J > 0 is evaluated at -J; the exponential-times-erfc
    product is computed in scaled form to stay finite for large |J|.
    """
    J = -abs(J)
    tail = 0.5 * float(erfcx(-math.sqrt(2.0) * J))
    return (n - 1) / 2.0 * LN2 + 0.25 + J * math.sqrt(2.0 / math.pi) - J * J - tail


def quadrature(fn, a: float, b: float, abs_tol: float) -> float:
    """Adaptive quadrature of fn on [a, b]; raises QuadratureError when the
    achieved error estimate misses abs_tol."""
    value, err, info, *rest = scipy.integrate.quad(fn, a, b, epsabs=abs_tol,
                                                   epsrel=0.0, limit=200,
                                                   full_output=1)
    if rest or err > abs_tol:
        raise QuadratureError(
            f"quadrature on [{a}, {b}] achieved error estimate {err}, "
            f"requested {abs_tol}"
        )
    return value


def average_over_sectors(f: float, abs_tol: float = 1e-9) -> float:
    """n-independent entropy correction beyond m ln2, from Gaussian-weighted
    quadrature of the sector asymptotics over J.

    For f < 1/2 the J-dependent part integrates to zero and the correction is
    ln(1-f)/2; at f = 1/2 the quadrature contributes the constant -2/pi on top
    of -ln(2)/2.  The integrand carries weight exp(-2J^2), so truncation to
    |J| <= 8 is far below the tolerance.
    """
    if not 0.0 < f <= 0.5:
        raise ValueError(f"subsystem fraction f={f} outside (0, 1/2]")
    if f < 0.5:
        integral = quadrature(lambda J: math.exp(-2.0 * J * J) * (1.0 - 4.0 * J * J),
                              -8.0, 8.0, abs_tol)
        return math.log(1.0 - f) / 2.0 + f / math.sqrt(2.0 * math.pi) * integral

    def integrand(J: float) -> float:
        inner = (0.25 + J * math.sqrt(2.0 / math.pi) - J * J
                 - 0.5 * float(erfcx(-math.sqrt(2.0) * J)))
        return math.exp(-2.0 * J * J) * inner

    integral = quadrature(integrand, -8.0, 0.0, abs_tol)
    return -LN2 / 2.0 + math.sqrt(8.0 / math.pi) * integral
