"""Mixing decisions and cohomology constructions for suspension flows.

The flow over a transitive shift with a positive locally constant roof is
not topologically mixing exactly when all periodic-orbit lengths lie on a
common grid delta*Z.  For SFT bases this is decided exactly via a
spanning-tree potential on the weighted presentation; for other bases the
periodic spectrum is scanned up to a bound and findings are reported as
semidecisions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from suspmix.exact import QVector, RealBasis, setwise_commensurate, span_rank
from suspmix.roofs import LocallyConstantRoof, WeightedShift, birkhoff_sum, roof_as_edge_weights
from suspmix.shift import (
    Alphabet,
    EdgeShift,
    EventuallyPeriodicPoint,
    Word,
    base_period,
    cycles_up_to,
    higher_block_recode,
    is_transitive,
    is_word_admissible,
)


class HypothesisError(ValueError):
    """A stated precondition of a decision procedure does not hold."""


@dataclass(frozen=True)
class MixingVerdict:
    """Outcome of a mixing decision.

    ``kind`` is one of "TopMixing", "NotTopMixing", "NotMixingUpToBound",
    "Unknown".  ``delta`` is the maximal grid constant for the two
    non-mixing kinds; ``bound`` the period bound of a semidecision;
    ``generators`` the values whose rational span settled the decision.
    """

    kind: str
    delta: Optional[QVector] = None
    bound: Optional[int] = None
    reason: str = ""
    generators: tuple = ()
    witnesses: tuple = ()

    def __post_init__(self):
        if self.kind in ("NotTopMixing", "NotMixingUpToBound"):
            assert self.delta is not None and self.delta.is_positive()

    @property
    def is_mixing(self) -> Optional[bool]:
        if self.kind == "TopMixing":
            return True
        if self.kind == "NotTopMixing":
            return False
        return None

    def to_record(self) -> dict:
        rec = {"verdict": self.kind}
        if self.delta is not None:
            rec["delta"] = self.delta.render()
            rec["basis"] = list(self.delta.basis.names)
        if self.bound is not None:
            rec["bound"] = self.bound
        if self.reason:
            rec["reason"] = self.reason
        rec["generators"] = [g.render() for g in self.generators]
        rec["witness_orbits"] = [str(w) for w in self.witnesses]
        return rec


@dataclass
class CycleData:
    """Spanning-tree potentials and edge cycle-values of a weighted graph.

    ``potentials[v]`` is the weight of a tree path discounted so that tree
    edges have cycle-value zero; ``cycle_values[i] = p(src) + w - p(tgt)``
    for edge i.  The subgroup generated by closed-walk weight sums equals
    the subgroup generated by the cycle values: each cycle value is a
    difference of two closed-walk sums through the root, and every
    closed-walk sum telescopes to a sum of cycle values.
    """

    weighted: WeightedShift
    root: object
    potentials: dict
    cycle_values: tuple[QVector, ...]

    def nonzero_cycle_values(self) -> list[QVector]:
        return [c for c in self.cycle_values if not c.is_zero()]


def cycle_data(weighted: WeightedShift) -> CycleData:
    """Potentials and cycle values over a strongly connected weighted shift."""
    shift = weighted.shift
    if not is_transitive(shift):
        raise HypothesisError("weighted presentation is not strongly connected")
    basis = weighted.weights[0].basis
    root = min(shift.vertices, key=str)
    # in-tree toward the root: parent edge of v goes from v toward the root
    parent_edge: dict = {}
    frontier = [root]
    reached = {root}
    while frontier:
        u = frontier.pop()
        for i in shift.in_edges(u):
            v = shift.edges[i].source
            if v not in reached:
                reached.add(v)
                parent_edge[v] = i
                frontier.append(v)
    potentials = {root: basis.zero()}

    def potential(v):
        if v not in potentials:
            e = parent_edge[v]
            # tree edge v -> parent has cycle value zero: p(v) + w = p(parent)
            potentials[v] = potential(shift.edges[e].target) - weighted.weights[e]
        return potentials[v]

    for v in shift.vertices:
        potential(v)
    values = tuple(
        potentials[e.source] + weighted.weights[i] - potentials[e.target]
        for i, e in enumerate(shift.edges)
    )
    return CycleData(weighted, root, potentials, values)


def decide_mixing_sft(shift: EdgeShift, roof: LocallyConstantRoof) -> MixingVerdict:
    """Exact mixing decision for an SFT base (grid criterion on cycle values)."""
    if not is_transitive(shift):
        return MixingVerdict("Unknown", reason="base shift is not transitive")
    weighted = roof_as_edge_weights(roof, shift)
    data = cycle_data(weighted)
    generators = data.nonzero_cycle_values()
    # positive roofs force a nonzero cycle value on every cycle
    delta = setwise_commensurate(generators)
    reason = ""
    if len(weighted.shift.edges) == len(weighted.shift.vertices):
        reason = "base is a single periodic orbit; the dichotomy is vacuous there"
    if delta is None:
        return MixingVerdict("TopMixing", generators=tuple(generators))
    return MixingVerdict(
        "NotTopMixing", delta=delta, reason=reason, generators=tuple(generators)
    )


# -- synchronized / oracle-presented shifts ---------------------------------


@dataclass
class ShiftOracle:
    """Language access for shifts given without a finite presentation.

    ``is_admissible`` answers finite-word membership; ``periodic_admissible``
    answers whether the bi-infinite repetition of a word lies in the shift.
    """

    alphabet: Alphabet
    is_admissible: Callable[[Word], bool]
    periodic_admissible: Callable[[Word], bool]

    @classmethod
    def from_edge_shift(cls, shift: EdgeShift) -> "ShiftOracle":
        from suspmix.shift import close_orbit

        def periodic(w: Word) -> bool:
            try:
                close_orbit(shift, w)
                return True
            except ValueError:
                return False

        return cls(shift.alphabet, lambda w: is_word_admissible(shift, w), periodic)


def periodic_words_in_cylinder(
    oracle: ShiftOracle, v: Word, period_bound: int
) -> list[Word]:
    """Words w, |w| <= bound, with w-bar in the shift and in the cylinder [v].

    Enumerated by DFS with admissibility pruning on prefixes.
    """
    found = []
    for q in range(1, period_bound + 1):

        def matches_cylinder(prefix) -> bool:
            # positions i of w^inf must equal v_i for i < |v|
            for i, s in enumerate(prefix):
                for pos in range(i, len(v), q):
                    if v[pos] != s:
                        return False
            return True

        def dfs(prefix):
            if len(prefix) == q:
                w = Word(prefix)
                if oracle.periodic_admissible(w):
                    found.append(w)
                return
            for s in oracle.alphabet.symbols:
                prefix.append(s)
                if matches_cylinder(prefix) and oracle.is_admissible(Word(prefix)):
                    dfs(prefix)
                prefix.pop()

        dfs([])
    return found


def decide_mixing_synchronized(
    oracle: ShiftOracle,
    v: Word,
    roof: LocallyConstantRoof,
    period_bound: int,
) -> MixingVerdict:
    """Semidecision from periodic orbits through a synchronizing word.

    Orbit-length rank >= 2 certifies mixing; a common grid among the
    orbits found is only evidence and is reported as NotMixingUpToBound.
    """
    words = periodic_words_in_cylinder(oracle, v, period_bound)
    if not words:
        return MixingVerdict(
            "Unknown",
            bound=period_bound,
            reason="no periodic point found in the cylinder within the period bound",
        )
    sums = []
    for w in words:
        p = EventuallyPeriodicPoint.periodic(w)
        sums.append(birkhoff_sum(roof, p, len(w)))
    if span_rank(sums) >= 2:
        return MixingVerdict("TopMixing", generators=tuple(sums), witnesses=tuple(words))
    delta = setwise_commensurate(sums)
    return MixingVerdict(
        "NotMixingUpToBound",
        delta=delta,
        bound=period_bound,
        generators=tuple(sums),
        witnesses=tuple(words),
    )


def check_multi_sync(
    oracle: ShiftOracle,
    roof: LocallyConstantRoof,
    v: Word,
    u: Word,
    delta: QVector,
    bound: int,
) -> bool:
    """Consistency of the grid across two synchronizing words.

    Verifies first that the orbits through v (up to the bound) lie on the
    delta-grid, then reports whether the orbits through u do too.

    Raises
    ------
    HypothesisError
        If the orbits through v already leave the grid.
    """

    def on_grid(words) -> bool:
        for w in words:
            s = birkhoff_sum(roof, EventuallyPeriodicPoint.periodic(w), len(w))
            q = s.ratio_to(delta)
            if q is None or q.denominator != 1:
                return False
        return True

    if not on_grid(periodic_words_in_cylinder(oracle, v, bound)):
        raise HypothesisError(
            "orbits through %s are not on the %s grid; nothing to check" % (v, delta)
        )
    return on_grid(periodic_words_in_cylinder(oracle, u, bound))


# -- cohomology -------------------------------------------------------------


@dataclass
class TransferFunction:
    """A locally constant function g with window x[-past .. future].

    Unlike a roof, values may be zero or negative, and ``future`` may be
    -1 (the window then ends left of the origin).
    """

    past: int
    future: int
    table: dict[Word, QVector]

    def value_at(self, point, j: int = 0) -> QVector:
        w = Word(point[j + i] for i in range(-self.past, self.future + 1))
        return self.table[w]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.table.values())


@dataclass
class CohomologyResult:
    cohomologous: bool
    transfer: Optional[TransferFunction]
    witness_orbit: Optional[EventuallyPeriodicPoint] = None

    def __iter__(self):
        return iter((self.cohomologous, self.transfer))


def _block_presentation(shift: EdgeShift, k: int):
    """Recode with blocks of length >= k so block names pin vertices.

    Returns (recoded shift, window map, block length).  Raises if no
    block length up to k + |V| separates the vertices.
    """
    for kk in range(k, k + len(shift.vertices) + 2):
        recoded, windows = higher_block_recode(shift, kk)
        if all(isinstance(v, Word) for v in recoded.vertices):
            return recoded, windows, kk
    raise HypothesisError(
        "no block length up to %d makes vertices symbol-determined" % (k + len(shift.vertices) + 1)
    )


def _sub_window(window: Word, k: int, future: int, roof_past: int, roof_future: int) -> Word:
    """The roof window inside a (k+1)-block edge window.

    The edge window covers positions [i-k, i]; the roof is evaluated at
    position j = i - future.
    """
    lo = k - future - roof_past
    return window[lo : lo + roof_past + roof_future + 1]


def are_cohomologous(
    r: LocallyConstantRoof, s: LocallyConstantRoof, shift: EdgeShift
) -> CohomologyResult:
    """Decide whether r - s is a coboundary g∘σ - g, constructing g.

    Exact: cohomologous iff every cycle of the weighted difference has
    value zero; g is then read off the spanning-tree potentials.  When
    false, a periodic witness orbit with a nonzero obstruction is
    attached.
    """
    if not is_transitive(shift):
        raise HypothesisError("cohomology test requires a transitive SFT base")
    past = max(r.past, s.past)
    future = max(r.future, s.future)
    recoded, windows, k = _block_presentation(shift, past + future + 1)
    diffs = tuple(
        r.value_on_window(_sub_window(windows[i], k, future, r.past, r.future))
        - s.value_on_window(_sub_window(windows[i], k, future, s.past, s.future))
        for i in range(len(recoded.edges))
    )
    weighted = WeightedShift(recoded, diffs, windows)
    data = cycle_data(weighted)
    if any(not c.is_zero() for c in data.cycle_values):
        witness = _nonzero_cycle_witness(weighted)
        return CohomologyResult(False, None, witness)
    # d(e) = p(target) - p(source) on every edge: g is the potential read
    # on source blocks, which cover positions [j - (k - future), j + future - 1]
    g = TransferFunction(
        past=k - future,
        future=future - 1,
        table={v: data.potentials[v] for v in recoded.vertices},
    )
    for i, e in enumerate(recoded.edges):
        assert (diffs[i] - (data.potentials[e.target] - data.potentials[e.source])).is_zero()
    return CohomologyResult(True, g)


def _nonzero_cycle_witness(weighted: WeightedShift) -> EventuallyPeriodicPoint:
    """A periodic orbit whose weight sum is nonzero (exists when some
    cycle value is nonzero, among simple cycles of length <= |V|)."""
    shift = weighted.shift
    for cyc in cycles_up_to(shift, len(shift.vertices)):
        total = weighted.weights[cyc[0]].basis.zero()
        for i in cyc:
            total = total + weighted.weights[i]
        if not total.is_zero():
            labels = Word(shift.edges[i].label for i in cyc)
            return EventuallyPeriodicPoint.periodic(labels)
    raise AssertionError("nonzero cycle value but no nonzero simple cycle")


def periodic_obstruction(
    r: LocallyConstantRoof, s: LocallyConstantRoof, p: EventuallyPeriodicPoint
) -> QVector:
    """Birkhoff sum of r - s over one period of p; nonzero refutes cohomology."""
    q = p.minimal_period()
    if q is None:
        raise ValueError("obstruction requires a periodic point")
    return birkhoff_sum(r, p, q) - birkhoff_sum(s, p, q)


# -- grid normalization and cross-sections ----------------------------------


@dataclass
class GridNormalization:
    """Roof s on the delta-grid together with the transfer function g.

    Satisfies s = r - g + g∘σ exactly, with every value of s a positive
    integer multiple of delta.
    """

    transfer: TransferFunction
    roof: LocallyConstantRoof
    delta: QVector

    def __iter__(self):
        return iter((self.transfer, self.roof))


def _reduce_mod(value: QVector, delta: QVector) -> QVector:
    """value - n*delta in [0, delta), via a float-guided exact choice of n."""
    n = math.floor(float(value) / float(delta))
    for candidate_n in (n - 1, n, n + 1):
        candidate = value - delta.scale(candidate_n)
        f = float(candidate)
        if -1e-12 <= f < float(delta) - 1e-12:
            if candidate.is_zero() or candidate.is_positive():
                return candidate
            if f <= 0:
                continue
    raise ArithmeticError("cannot place %s on the [0, %s) interval" % (value, delta))


def normalize_to_delta_grid(
    shift: EdgeShift, roof: LocallyConstantRoof, delta: QVector
) -> GridNormalization:
    """Cohomologous roof with values in delta*N, via mod-delta potentials.

    ``delta`` must divide every cycle value of the weighted presentation
    (as certified by decide_mixing_sft).  If delta is not below the
    minimum roof value it is first shrunk to delta/k, which satisfies the
    same containment.
    """
    recoded, windows, k = _block_presentation(shift, max(roof.past + roof.future, 1))
    weights = tuple(
        roof.value_on_window(_sub_window(windows[i], k, roof.future, roof.past, roof.future))
        for i in range(len(recoded.edges))
    )
    weighted = WeightedShift(recoded, weights, windows)
    data = cycle_data(weighted)
    for c in data.cycle_values:
        if c.is_zero():
            continue
        q = c.ratio_to(delta)
        if q is None or q.denominator != 1:
            raise HypothesisError("delta %s does not divide cycle value %s" % (delta, c))
    min_w = float(roof.min_value())
    if float(delta) >= min_w:
        shrink = math.floor(float(delta) / min_w) + 1
        delta = delta.scale(Fraction(1, shrink))
    g = TransferFunction(
        past=k - roof.future,
        future=roof.future - 1,
        table={v: _reduce_mod(-data.potentials[v], delta) for v in recoded.vertices},
    )
    s_table = {}
    for i, e in enumerate(recoded.edges):
        s_val = weights[i] - g.table[e.source] + g.table[e.target]
        q = s_val.ratio_to(delta)
        assert q is not None and q.denominator == 1 and q >= 1
        s_table[windows[i]] = s_val
    s = LocallyConstantRoof(past=k - roof.future, future=roof.future, table=s_table)
    return GridNormalization(g, s, delta)


def unit_cross_section(
    shift: EdgeShift, roof: LocallyConstantRoof, delta: QVector
) -> EdgeShift:
    """Return-map graph of the cross-section at heights j*delta.

    Every roof value must be a positive integer multiple of delta.  Each
    block vertex u with value k_u*delta expands into levels (u, 0) ...
    (u, k_u - 1) chained upward, with top levels feeding the bottom
    levels of the successors; the induced flow has constant roof delta.
    """
    if all(v == delta for v in roof.values()):
        # the section at height 0 is the base itself
        return shift
    # recode so the roof value is a function of the (past+future+1)-block vertex
    recoded, _, k = _block_presentation(shift, roof.past + roof.future + 1)
    multiples = {}
    for v in recoded.vertices:
        window = v[len(v) - (roof.past + roof.future + 1) :]
        q = roof.value_on_window(window).ratio_to(delta)
        if q is None or q.denominator != 1 or q < 1:
            raise HypothesisError(
                "roof value at %s is not a positive integer multiple of %s" % (v, delta)
            )
        multiples[v] = int(q)
    vertices = [(v, l) for v in recoded.vertices for l in range(multiples[v])]
    edges = []
    for v in recoded.vertices:
        for l in range(multiples[v] - 1):
            edges.append(((v, l), (v, l + 1), 0))
    for e in recoded.edges:
        edges.append(((e.source, multiples[e.source] - 1), (e.target, 0), 0))
    return EdgeShift(vertices, edges, Alphabet.of_size(1))


# -- density of non-mixing roofs --------------------------------------------


def approximate_locally_constant(
    samples: dict[Word, float], eps: float
) -> LocallyConstantRoof:
    """Rational-valued locally constant roof within eps of the samples.

    Values are rounded to the grid of denominator ceil(1/eps); the output
    has rational range, so its suspension flow is never topologically
    mixing.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if any(v <= 0 for v in samples.values()):
        raise ValueError("samples must be positive")
    q = math.ceil(1 / eps)
    basis = RealBasis.rational()
    lengths = {len(w) for w in samples}
    if len(lengths) != 1:
        raise ValueError("sample windows must share one length")
    table = {}
    for w, v in samples.items():
        approx = Fraction(round(v * q), q)
        if approx <= 0:
            approx = Fraction(1, q)
        table[w] = basis.from_rational(approx)
    return LocallyConstantRoof(past=0, future=lengths.pop() - 1, table=table)
