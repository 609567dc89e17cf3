"""Roof functions over shift spaces.

Two representations: exact locally constant roofs (values in a rational
span of declared constants, depending on a finite coordinate window) and
float-evaluable roofs with a quantified modulus of continuity.  Birkhoff
sums are exact for locally constant roofs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from suspmix.exact import QVector, RealBasis
from suspmix.shift import Alphabet, EdgeShift, Word, admissible_words, higher_block_recode


class _ShiftedView:
    """Read-only view of a point advanced by a fixed offset."""

    def __init__(self, point, offset: int):
        self._point = point
        self._offset = offset

    def __getitem__(self, i: int) -> int:
        return self._point[i + self._offset]


class LocallyConstantRoof:
    """A positive roof depending only on coordinates ``x[-past .. future]``.

    Parameters
    ----------
    past, future : int
        Window extents; the roof value at x is ``table[x[-past..future]]``.
    table : dict[Word, QVector]
        One entry per admissible window; every value strictly positive.
    """

    def __init__(self, past: int, future: int, table: dict[Word, QVector]):
        if past < 0 or future < 0:
            raise ValueError("window extents must be non-negative")
        if not table:
            raise ValueError("roof table is empty")
        width = past + future + 1
        for w, v in table.items():
            if len(w) != width:
                raise ValueError("window %s has length %d, expected %d" % (w, len(w), width))
            if not v.is_positive():
                raise ValueError("roof value %s at window %s is not positive" % (v, w))
        self.past = past
        self.future = future
        self.table = dict(table)
        self.basis: RealBasis = next(iter(table.values())).basis

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_symbols(cls, values: dict[int, QVector]) -> "LocallyConstantRoof":
        """Depth-one roof r(x) = values[x_0]."""
        return cls(0, 0, {Word([s]): v for s, v in values.items()})

    @classmethod
    def constant(cls, c: QVector, alphabet: Alphabet) -> "LocallyConstantRoof":
        return cls.from_symbols({s: c for s in alphabet.symbols})

    @classmethod
    def from_function(
        cls,
        past: int,
        future: int,
        func: Callable[[Word], QVector],
        shift: EdgeShift,
    ) -> "LocallyConstantRoof":
        """Tabulate ``func`` on every admissible window of the shift."""
        table = {w: func(w) for w in admissible_words(shift, past + future + 1)}
        return cls(past, future, table)

    # -- evaluation ---------------------------------------------------------

    def value_on_window(self, w: Word) -> QVector:
        try:
            return self.table[w]
        except KeyError:
            raise KeyError("window %s not in roof table (inadmissible context)" % (w,))

    def value_at(self, point, j: int = 0) -> QVector:
        """Roof value at the point shifted j times."""
        w = Word(point[j + i] for i in range(-self.past, self.future + 1))
        return self.value_on_window(w)

    def values(self) -> list[QVector]:
        return list(self.table.values())

    def min_value(self) -> QVector:
        return min(self.table.values(), key=float)

    def max_value(self) -> QVector:
        return max(self.table.values(), key=float)

    def admissible_words_from_table(self, length: int) -> list[Word]:
        """Words all of whose windows occur in the table.

        The table's key set is used as the window language; for roofs
        tabulated on a shift this contains every admissible word.
        """
        width = self.past + self.future + 1
        if length < width:
            seen = set()
            for key in self.table:
                for i in range(width - length + 1):
                    seen.add(key[i : i + length])
            return sorted(seen)
        words = list(self.table.keys())
        for _ in range(length - width):
            words = [
                w + Word([k[-1]])
                for w in words
                for k in self.table
                if w[len(w) - width + 1 :] == k[: width - 1]
            ]
        return sorted(set(words))


@dataclass
class EvaluableRoof:
    """A positive roof given by a float evaluator and a continuity modulus.

    ``evaluator(point)`` must be pure and depend on the point only through
    integer indexing; ``walters_modulus(k)`` bounds Birkhoff-sum
    discrepancies for points agreeing on ``[-k, n+k]`` and is
    non-increasing with limit 0.  ``floor`` is a certified positive lower
    bound for the roof.  ``vectorized``, when given, maps a numpy symbol
    array to the array of roof values along it (a fast path used by the
    simulator; it must agree with ``evaluator``).
    """

    evaluator: Callable
    walters_modulus: Callable[[int], float]
    floor: float
    vectorized: Callable | None = None

    def value_at(self, point, j: int = 0) -> float:
        return self.evaluator(_ShiftedView(point, j) if j else point)


def birkhoff_sum(roof, p, n: int):
    """Sum of the roof along the first n shifts of p.

    Exact (QVector) for locally constant roofs, float otherwise.
    """
    if n < 0:
        raise ValueError("birkhoff_sum needs n >= 0")
    if isinstance(roof, LocallyConstantRoof):
        total = roof.basis.zero()
        for j in range(n):
            total = total + roof.value_at(p, j)
        return total
    return sum(roof.value_at(p, j) for j in range(n))


@dataclass
class WeightedShift:
    """An edge shift with one exact weight per edge.

    ``windows`` maps edge indices to the roof window each edge reads; for
    a walk, the sum of edge weights over any closed path equals the
    Birkhoff sum of the originating roof over the spelled periodic word.
    """

    shift: EdgeShift
    weights: tuple[QVector, ...]
    windows: dict[int, Word]

    def weight(self, edge_index: int) -> QVector:
        return self.weights[edge_index]


def roof_as_edge_weights(roof: LocallyConstantRoof, shift: EdgeShift) -> WeightedShift:
    """Recode so each edge carries the exact roof value of its window.

    Uses a higher-block presentation of depth past+future; closed-path
    weight sums equal Birkhoff sums over the corresponding periodic
    points.
    """
    depth = roof.past + roof.future
    if depth == 0:
        weights = tuple(roof.value_on_window(Word([e.label])) for e in shift.edges)
        windows = {i: Word([e.label]) for i, e in enumerate(shift.edges)}
        return WeightedShift(shift, weights, windows)
    recoded, windows = higher_block_recode(shift, depth)
    weights = tuple(roof.value_on_window(windows[i]) for i in range(len(recoded.edges)))
    return WeightedShift(recoded, weights, windows)


def walters_norm(roof: LocallyConstantRoof) -> QVector:
    """2·sup|r| plus the supremum of Birkhoff-sum discrepancies.

    The supremum runs over m >= 1 and pairs of points agreeing on
    [-m, m], of |sum_{j<m} r(sigma^j x) - r(sigma^j y)|.  For a window
    [-past, future] only the positions j with j + future > m can differ,
    so the enumeration is finite and stabilizes for m > past + future.
    """
    two_sup = roof.max_value().scale(2)
    mm, nn = roof.past, roof.future
    if mm == 0 and nn <= 1:
        # every window in the sum is contained in the agreement zone
        return two_sup
    best = roof.basis.zero()
    width = mm + nn + 1
    # The achievable discrepancies stabilize once m exceeds the window
    # extent (for larger m the divergent positions translate).
    for m in range(1, mm + nn + 2):
        # coordinates needed: [-mm, m-1+nn]; agreement zone: [-m, m]
        lo = -mm
        total_len = (m - 1 + nn) - lo + 1
        shared = range(max(-m, lo) - lo, min(m, m - 1 + nn) - lo + 1)
        words = roof.admissible_words_from_table(total_len)
        by_shared: dict[tuple, list[Word]] = {}
        for w in words:
            key = tuple(w[i] for i in shared)
            by_shared.setdefault(key, []).append(w)
        for group in by_shared.values():
            for a, b in itertools.combinations(group, 2):
                diff = roof.basis.zero()
                for j in range(m):
                    wa = a[j - mm - lo : j - mm - lo + width]
                    wb = b[j - mm - lo : j - mm - lo + width]
                    if wa != wb:
                        diff = diff + roof.value_on_window(wa)
                        diff = diff - roof.value_on_window(wb)
                if abs(float(diff)) > abs(float(best)):
                    best = diff
    if float(best) < 0:
        best = -best
    return two_sup + best


def example_roof_harmonic() -> EvaluableRoof:
    """The roof 1 + 1/(1 + rho(x)) on [0], 1 on [1], over the full 2-shift.

    rho(x) counts the consecutive zeros from position 0; the value at the
    all-zero point is 1, the continuous extension.
    """
    import numpy as np

    scan_limit = 10**7

    def evaluator(point) -> float:
        if point[0] == 1:
            return 1.0
        rho = 1
        while rho < scan_limit and point[rho] == 0:
            rho += 1
        if rho >= scan_limit:
            return 1.0
        return 1.0 + 1.0 / (1.0 + rho)

    def vectorized(symbols: "np.ndarray") -> "np.ndarray":
        # distance to the next 1 at or after each position, along the array;
        # positions with no later 1 are treated as infinite runs of zeros
        n = len(symbols)
        dist = np.zeros(n, dtype=np.int64)
        nxt = -1
        for i in range(n - 1, -1, -1):
            if symbols[i] == 1:
                nxt = i
            dist[i] = (nxt - i) if nxt >= 0 else np.iinfo(np.int64).max // 2
        values = np.ones(n, dtype=np.float64)
        zeros = symbols == 0
        values[zeros] = 1.0 + 1.0 / (1.0 + dist[zeros])
        return values

    return EvaluableRoof(
        evaluator=evaluator,
        walters_modulus=lambda k: 2.0 / max(k, 1),
        floor=1.0,
        vectorized=vectorized,
    )
