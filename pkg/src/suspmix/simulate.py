"""Suspension-flow evaluation and empirical mixing diagnostics.

The flow over a shift with a positive roof is computed by exact Birkhoff
accounting over the symbolic itinerary: crossings are located from
partial sums of the roof, never by time-stepping.  Hitting-time series
of cylinder targets feed a residue-density diagnostic that separates the
two mixing verdicts empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from suspmix.roofs import EvaluableRoof, LocallyConstantRoof
from suspmix.shift import EventuallyPeriodicPoint, Word

_HEIGHT_GUARD = 1e-12


@dataclass
class SuspensionPoint:
    """A point (base, height) in the suspension space with 0 <= height < r(base)."""

    base: EventuallyPeriodicPoint
    height: float = 0.0

    def validated(self, roof) -> "SuspensionPoint":
        top = float(roof.value_at(self.base))
        if not (-_HEIGHT_GUARD <= self.height < top + _HEIGHT_GUARD):
            raise ValueError(
                "height %.17g outside [0, %.17g)" % (self.height, top)
            )
        return self


@dataclass
class ReturnTimeSeries:
    """Hitting times of a cylinder-and-height target, with a reference period.

    ``times`` is strictly increasing; ``omega`` is the reference period
    used for residue analysis (typically the period of the witnesses'
    right tail under the flow).
    """

    target: Word
    epsilon: float
    times: tuple[float, ...]
    omega: float

    def __post_init__(self):
        self.times = tuple(self.times)
        if self.omega <= 0:
            raise ValueError("reference period must be positive")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("hitting times must be strictly increasing")

    def residues(self) -> np.ndarray:
        return np.mod(np.asarray(self.times, dtype=np.float64), self.omega)


@dataclass
class MixingDiagnostic:
    """Residue-density summary of a return-time series.

    ``grid_fraction`` is the fraction of residues within 2*epsilon of the
    candidate delta-grid (None when no candidate was supplied);
    ``verdict`` is a suggestion only and never overrides an exact decider
    verdict.
    """

    omega: float
    residues: tuple[float, ...]
    max_gap: float
    bin_counts: tuple[int, ...]
    grid_fraction: Optional[float]
    verdict: str
    note: str = ""


def flow(p: SuspensionPoint, t: float, roof) -> SuspensionPoint:
    """Flow the point for time t (either sign) by exact crossing accounting."""
    x = p.base
    s = p.height + t
    n = 0
    while True:
        top = float(roof.value_at(x, n))
        if s < top:
            break
        s -= top
        n += 1
    while s < 0:
        n -= 1
        s += float(roof.value_at(x, n))
    out = SuspensionPoint(x.shifted(n), s)
    return out.validated(roof)


def _nonnegative_symbols(point: EventuallyPeriodicPoint, n: int) -> np.ndarray:
    """The symbols point[0..n-1] as an array, built by tiling the tail."""
    core = list(point.core)
    offset = point.origin_offset
    right = list(point.right_period)
    if offset <= len(core):
        prefix = core[offset:]
        phase = 0
    else:
        prefix = []
        phase = (offset - len(core)) % len(right)
    tail = right[phase:] + right[:phase]
    if len(prefix) >= n:
        return np.array(prefix[:n], dtype=np.int64)
    reps = -(-(n - len(prefix)) // len(tail))
    out = np.concatenate(
        [np.array(prefix, dtype=np.int64), np.tile(np.array(tail, dtype=np.int64), reps)]
    )
    return out[:n]


def _roof_values(roof, point: EventuallyPeriodicPoint, symbols: np.ndarray, n: int) -> np.ndarray:
    if isinstance(roof, EvaluableRoof) and roof.vectorized is not None:
        return np.asarray(roof.vectorized(symbols), dtype=np.float64)[:n]
    return np.array([float(roof.value_at(point, j)) for j in range(n)], dtype=np.float64)


def orbit_period(roof, word: Word) -> float:
    """The flow period of the periodic orbit through the repetition of word."""
    p = EventuallyPeriodicPoint.periodic(word)
    return float(sum(float(roof.value_at(p, j)) for j in range(len(word))))


def hitting_times(
    start_family: Sequence,
    target: Word,
    epsilon: float,
    roof,
    horizon: float,
    omega: Optional[float] = None,
    max_hits_per_member: Optional[int] = None,
    tail_only: bool = False,
) -> ReturnTimeSeries:
    """Times t <= horizon at which a member's segment sits inside [target]x(0,eps).

    Because epsilon is below the minimum roof value, the segment
    {x}x(0,eps) is contained in the target exactly at the Birkhoff
    partial sums S_n(x) over indices n with the window x[n .. n+|target|)
    equal to the target word; times are read off the partial sums
    directly.  With ``tail_only`` hits during a member's transient prefix
    are dropped and only returns inside its periodic tail count.
    """
    if not start_family:
        raise ValueError("empty start family")
    members = [
        m.base if isinstance(m, SuspensionPoint) else m for m in start_family
    ]
    floor = getattr(roof, "floor", None)
    if floor is None:
        floor = float(roof.min_value())
    if epsilon >= floor:
        raise ValueError("epsilon must be below the minimum roof value")
    if omega is None:
        omega = orbit_period(roof, members[0].right_period)
    goal = np.array(list(target), dtype=np.int64)
    hits: list[float] = []
    for x in members:
        n_max = int(horizon / floor) + 2
        margin = len(target) + 3 * len(x.right_period) + 8
        symbols = _nonnegative_symbols(x, n_max + margin)
        values = _roof_values(roof, x, symbols, n_max)
        sums = np.concatenate([[0.0], np.cumsum(values)])
        in_cyl = np.ones(n_max + 1, dtype=bool)
        for j, g in enumerate(goal):
            in_cyl &= symbols[j : j + n_max + 1] == g
        keep = in_cyl & (sums <= horizon)
        if tail_only:
            keep[: max(0, len(x.core) - x.origin_offset)] = False
        idx = np.nonzero(keep)[0]
        member_times = sums[idx]
        if max_hits_per_member is not None:
            member_times = member_times[:max_hits_per_member]
        hits.extend(member_times.tolist())
    unique = sorted(set(hits))
    return ReturnTimeSeries(target, epsilon, tuple(unique), omega)


def witness_family(
    shift,
    u: Word,
    w: Word,
    v1: Word,
    v2: Word,
    zeta: Word,
    n_range: Iterable[int],
    m_range: Iterable[int],
) -> list[EventuallyPeriodicPoint]:
    """The witnesses ...u w v1^n v2^m zeta^inf, one per (n, m), origin at w.

    ``shift`` supplies admissibility checking: an EdgeShift, an object
    with an ``is_admissible`` callable, or None to skip the check.
    """
    checker = None
    if shift is not None:
        if hasattr(shift, "is_admissible"):
            checker = shift.is_admissible
        else:
            from suspmix.shift import is_word_admissible

            checker = lambda word: is_word_admissible(shift, word)
    family = []
    for n in n_range:
        for m in m_range:
            core = w + v1 * n + v2 * m
            if checker is not None:
                probe = u + u + core + zeta + zeta
                if not checker(probe):
                    raise ValueError(
                        "inadmissible concatenation at (n, m) = (%d, %d)" % (n, m)
                    )
            family.append(EventuallyPeriodicPoint.from_parts(u, core, zeta, 0))
    return family


def gcd_dense_solve(
    a: float,
    b: float,
    omega: float,
    x: float,
    delta: float,
    search_bound: int,
    prefer_large: bool = False,
) -> Optional[tuple[int, int, int]]:
    """Natural n, m <= bound and integer k with |n*a + m*b - x - k*omega| < delta.

    With ``prefer_large`` the scan runs from the top of the search box,
    returning the largest solution found first.
    """
    if min(a, b, omega, delta) <= 0:
        raise ValueError("a, b, omega, delta must be positive")
    if not 0 <= x < omega:
        raise ValueError("x must lie in [0, omega)")
    order = range(search_bound, -1, -1) if prefer_large else range(search_bound + 1)
    for n in order:
        for m in order:
            if n == 0 and m == 0:
                continue
            total = n * a + m * b - x
            k = round(total / omega)
            if abs(total - k * omega) < delta:
                return n, m, int(k)
    return None


def density_diagnostic(
    series: ReturnTimeSeries,
    candidate_delta: Optional[float] = None,
    n_bins: int = 10,
    grid_threshold: float = 0.99,
) -> MixingDiagnostic:
    """Residues of the hitting times mod omega, their largest circular gap,
    and (when a candidate delta is supplied) the fraction lying within
    2*epsilon of the delta-grid."""
    if len(series.times) < 10:
        raise ValueError("need at least 10 hitting times")
    omega = series.omega
    residues = np.sort(series.residues())
    gaps = np.diff(residues)
    wrap = omega - residues[-1] + residues[0]
    max_gap = float(max(gaps.max(initial=0.0), wrap))
    counts, _ = np.histogram(residues, bins=n_bins, range=(0.0, omega))
    grid_fraction = None
    if candidate_delta is not None:
        rem = np.mod(residues, candidate_delta)
        dist = np.minimum(rem, candidate_delta - rem)
        grid_fraction = float(np.mean(dist <= 2 * series.epsilon))
    if grid_fraction is not None and grid_fraction >= grid_threshold:
        verdict = "non-mixing-consistent"
        note = "residues concentrate on the candidate grid"
    elif max_gap <= series.epsilon:
        verdict = "mixing-consistent"
        note = "residues are epsilon-dense in [0, omega)"
    else:
        verdict = "inconclusive"
        note = "neither density nor grid concentration reached threshold"
    return MixingDiagnostic(
        omega=omega,
        residues=tuple(residues.tolist()),
        max_gap=max_gap,
        bin_counts=tuple(int(c) for c in counts),
        grid_fraction=grid_fraction,
        verdict=verdict,
        note=note,
    )


def export_series(obj, path) -> str:
    """Write a return-time series or diagnostic as CSV; returns the path.

    Series rows are "time,residue"; diagnostic rows are
    "bin,count,max_gap" with the global max gap repeated per row.  Floats
    are printed with 17 significant digits.
    """
    f17 = lambda x: format(float(x), ".17g")
    lines = []
    if isinstance(obj, ReturnTimeSeries):
        lines.append("time,residue")
        for t, r in zip(obj.times, obj.residues()):
            lines.append("%s,%s" % (f17(t), f17(r)))
    elif isinstance(obj, MixingDiagnostic):
        lines.append("bin,count,max_gap")
        for i, c in enumerate(obj.bin_counts):
            lines.append("%d,%d,%s" % (i, c, f17(obj.max_gap)))
    else:
        raise TypeError("expected a ReturnTimeSeries or MixingDiagnostic")
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")
    return str(path)
