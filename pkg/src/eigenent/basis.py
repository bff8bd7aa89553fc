"""Bit-level basis bookkeeping for a periodic chain of n spin-1/2's.

Convention: a computational basis state is an integer mask < 2**n where bit
(i-1) holds the z-projection of spin i (1 = up).  Subsystem A = spins 1..m
is therefore the m low-order bits, so Schmidt reshapes are pure index splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

MAX_SITES = 62  # masks are handled as int64 in vectorized code


def _check_sites(n: int) -> None:
    if not 1 <= n <= MAX_SITES:
        raise ValueError(f"site count must be in [1, {MAX_SITES}], got {n}")


def popcount(mask: int) -> int:
    """Number of up spins in the mask."""
    return int(mask).bit_count()


def cyclic_shift(mask: int, n: int) -> int:
    """Rotate the n-bit mask one position up (spin i moves to site i+1)."""
    _check_sites(n)
    if not 0 <= mask < (1 << n):
        raise ValueError(f"mask {mask} out of range for n={n}")
    return ((mask << 1) | (mask >> (n - 1))) & ((1 << n) - 1)


def representative(mask: int, n: int) -> tuple[int, int]:
    """Minimal mask over all cyclic shifts and the number of shifts to reach it.

    Returns (rep, t) with rep = T^t mask, rep = min over the orbit.
    """
    rep, t = mask, 0
    s = mask
    for l in range(1, n):
        s = cyclic_shift(s, n)
        if s < rep:
            rep, t = s, l
    return rep, t


def orbit_period(mask: int, n: int) -> int:
    """Smallest R > 0 with T^R mask = mask; always a divisor of n."""
    s = cyclic_shift(mask, n)
    r = 1
    while s != mask:
        s = cyclic_shift(s, n)
        r += 1
    return r


@dataclass(frozen=True)
class MagnetizationSector:
    """All basis states of an n-site chain with exactly j spins up, ascending."""

    n: int
    j: int
    states: np.ndarray  # int64 masks, strictly increasing

    @property
    def dim(self) -> int:
        return len(self.states)


def enumerate_sector(n: int, j: int) -> MagnetizationSector:
    """Enumerate the magnetization sector (popcount j) in ascending mask order.

    Uses the same-popcount successor (Gosper's hack), so the work per state
    is constant amortized rather than a filter over all 2**n masks.
    """
    _check_sites(n)
    if not 0 <= j <= n:
        raise ValueError(f"up-spin count j={j} outside [0, {n}]")
    size = comb(n, j)
    out = np.empty(size, dtype=np.int64)
    s = (1 << j) - 1
    for i in range(size):
        out[i] = s
        if i + 1 == size:
            break
        low = s & -s
        ripple = s + low
        s = ripple | (((s ^ ripple) >> 2) // low)
    return MagnetizationSector(n=n, j=j, states=out)


@dataclass(frozen=True)
class TranslationOrbit:
    """One orbit of the cyclic shift: representative, period, allowed momenta."""

    representative: int
    period: int
    n: int

    @property
    def allowed_momenta(self) -> list[int]:
        """Momentum indices k with k * period = 0 (mod n)."""
        return list(range(0, self.n, self.n // self.period))

    def members(self) -> list[int]:
        """Orbit members T^l rep for l = 0..period-1, in shift order."""
        out = [self.representative]
        s = self.representative
        for _ in range(self.period - 1):
            s = cyclic_shift(s, self.n)
            out.append(s)
        return out


def translation_orbits(n: int) -> list[TranslationOrbit]:
    """Partition all 2**n masks into cyclic-shift orbits, by representative."""
    _check_sites(n)
    seen = np.zeros(1 << n, dtype=bool)
    orbits = []
    for mask in range(1 << n):
        if seen[mask]:
            continue
        members = [mask]
        s = cyclic_shift(mask, n)
        while s != mask:
            members.append(s)
            s = cyclic_shift(s, n)
        for m in members:
            seen[m] = True
        orbits.append(TranslationOrbit(representative=mask, period=len(members), n=n))
    return orbits


@dataclass(frozen=True)
class OrbitTables:
    """Vectorized orbit lookup tables over the full 2**n space.

    rep_of[s]   representative of s's orbit
    shift_of[s] smallest t with T^t s = rep_of[s]
    period_of[s] orbit period
    """

    n: int
    rep_of: np.ndarray
    shift_of: np.ndarray
    period_of: np.ndarray
    orbits: tuple[TranslationOrbit, ...]


def orbit_tables(n: int) -> OrbitTables:
    """Build full-space lookup tables used by the momentum-sector eigensolver."""
    _check_sites(n)
    d = 1 << n
    rep_of = np.empty(d, dtype=np.int64)
    shift_of = np.empty(d, dtype=np.int64)
    period_of = np.empty(d, dtype=np.int64)
    orbits = []
    assigned = np.zeros(d, dtype=bool)
    for mask in range(d):
        if assigned[mask]:
            continue
        members = [mask]
        s = cyclic_shift(mask, n)
        while s != mask:
            members.append(s)
            s = cyclic_shift(s, n)
        period = len(members)
        # representative is the minimum; members[l] = T^l mask
        rep_pos = min(range(period), key=members.__getitem__)
        rep = members[rep_pos]
        for l, m in enumerate(members):
            assigned[m] = True
            rep_of[m] = rep
            shift_of[m] = (rep_pos - l) % period
            period_of[m] = period
        orbits.append(TranslationOrbit(representative=rep, period=period, n=n))
    orbits.sort(key=lambda o: o.representative)
    return OrbitTables(
        n=n,
        rep_of=rep_of,
        shift_of=shift_of,
        period_of=period_of,
        orbits=tuple(orbits),
    )
