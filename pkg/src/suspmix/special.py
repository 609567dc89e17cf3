"""Shift families beyond finite type.

Three constructions: beta-shifts (greedy expansion of 1, lexicographic
admissibility, truncated graph presentation), the coded subshift
generated by balanced 2/3-blocks together with 0 and 1, and a
topologically mixing binary shift with exactly two periodic orbits,
scaffolded on an aperiodic {3,4}-valued separator sequence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from suspmix.decider import ShiftOracle
from suspmix.shift import Alphabet, EdgeShift, EventuallyPeriodicPoint, Word


class PrecisionError(ArithmeticError):
    """An exact answer is not determined by the available precision."""


# -- exact arithmetic in a real quadratic field -----------------------------


@dataclass(frozen=True)
class QuadraticReal:
    """The real number a + b*sqrt(d) with rational a, b and square-free d > 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d <= 1 or math.isqrt(self.d) ** 2 == self.d:
            raise ValueError("d must be a non-square integer > 1")

    def _check(self, other):
        if isinstance(other, QuadraticReal) and other.d != self.d:
            raise ValueError("mixed quadratic fields")

    def __add__(self, other):
        if isinstance(other, QuadraticReal):
            self._check(other)
            return QuadraticReal(self.a + other.a, self.b + other.b, self.d)
        return QuadraticReal(self.a + Fraction(other), self.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * (other if isinstance(other, QuadraticReal) else Fraction(other))

    def __mul__(self, other):
        if isinstance(other, QuadraticReal):
            self._check(other)
            return QuadraticReal(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        other = Fraction(other)
        return QuadraticReal(self.a * other, self.b * other, self.d)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        bigger_rational = lhs > rhs
        if self.a > 0:
            return 1 if bigger_rational else (-1 if lhs != rhs else 0)
        return -1 if bigger_rational else (1 if lhs != rhs else 0)

    def compare(self, q) -> int:
        return (self - Fraction(q)).sign()

    def exact_floor(self) -> int:
        n = math.floor(float(self))
        while self.compare(n) < 0:
            n -= 1
        while self.compare(n + 1) >= 0:
            n += 1
        return n


class _GuardedFloat:
    """Float arithmetic whose floor refuses to guess near integers."""

    __slots__ = ("value", "guard")

    def __init__(self, value: float, guard: float = 1e-9):
        self.value = value
        self.guard = guard

    def __add__(self, other):
        return _GuardedFloat(self.value + _as_float(other), self.guard)

    def __sub__(self, other):
        return _GuardedFloat(self.value - _as_float(other), self.guard)

    def __mul__(self, other):
        return _GuardedFloat(self.value * _as_float(other), self.guard)

    def __float__(self):
        return self.value

    def is_zero(self) -> bool:
        return abs(self.value) <= self.guard

    def exact_floor(self) -> int:
        n = math.floor(self.value)
        if min(self.value - n, n + 1 - self.value) <= self.guard:
            raise PrecisionError(
                "floor of %.17g is within the guard band %g of an integer"
                % (self.value, self.guard)
            )
        return n


def _as_float(x):
    return float(x) if not isinstance(x, (int, Fraction)) else x


# -- beta-shifts ------------------------------------------------------------


def _floor(y) -> int:
    return y.exact_floor() if hasattr(y, "exact_floor") else math.floor(y)


def beta_expansion_of_one(beta, n_digits: int) -> Word:
    """First digits of the greedy expansion of 1 in base beta.

    ``beta`` may be a Fraction (exact), a QuadraticReal (exact), or a
    _GuardedFloat (raises PrecisionError when a digit is ambiguous).
    """
    if isinstance(beta, int):
        beta = Fraction(beta)
    if float(beta) <= 1:
        raise ValueError("beta must exceed 1")
    x = beta * 0 + 1  # the unit of the same arithmetic type
    digits = []
    for _ in range(n_digits):
        y = beta * x
        d = _floor(y)
        digits.append(d)
        x = y - d
    return Word(digits)


@dataclass
class BetaShift:
    """A beta-shift described by its expansion of 1.

    ``nu`` is the computed prefix of the greedy expansion; ``exact`` marks
    whether the trailing zeros are certified (the orbit of 1 hit 0).
    """

    beta: object
    nu: Word
    exact_tail: bool

    @classmethod
    def create(cls, beta, n_digits: int = 64) -> "BetaShift":
        nu = beta_expansion_of_one(beta, n_digits)
        exact_tail = False
        if isinstance(beta, (int, Fraction, QuadraticReal)):
            # replay to see whether the greedy orbit terminates at 0
            b = Fraction(beta) if not isinstance(beta, QuadraticReal) else beta
            x = b * 0 + 1
            for d in nu:
                x = b * x - d
            exact_tail = x.is_zero() if isinstance(x, QuadraticReal) else x == 0
        return cls(beta, nu, exact_tail)

    @classmethod
    def golden(cls, n_digits: int = 64) -> "BetaShift":
        return cls.create(QuadraticReal(Fraction(1, 2), Fraction(1, 2), 5), n_digits)

    def max_digit(self) -> int:
        return max(self.nu)

    def alphabet(self) -> Alphabet:
        return Alphabet.of_size(self.max_digit() + 1)

    def comparison_sequence(self) -> tuple[list[int], Optional[int]]:
        """The sequence governing admissibility, as (prefix, period start).

        For a finite (simple Parry) expansion nu_1..nu_k the quasi-greedy
        sequence (nu_1 .. nu_{k-1} (nu_k - 1)) repeated governs the closed
        shift; otherwise the known prefix of nu with no period.
        """
        digits = list(self.nu)
        if self.exact_tail:
            last = max(i for i, d in enumerate(digits) if d != 0)
            block = digits[: last + 1]
            block[-1] -= 1
            return block, 0
        return digits, None

    def bound_digit(self, i: int) -> int:
        """Symbol i of the governing sequence; raises past the known prefix."""
        seq, period_start = self.comparison_sequence()
        if period_start is not None:
            return seq[period_start + (i - period_start) % (len(seq) - period_start)]
        if i >= len(seq):
            raise PrecisionError("admissibility undecided at digit %d of nu" % i)
        return seq[i]


def is_beta_admissible(w, shift: BetaShift) -> bool:
    """Every shifted tail must be lexicographically <= the governing sequence."""
    if isinstance(w, EventuallyPeriodicPoint):
        span = len(w.core) + w.origin_offset
        horizon = 4 * (span + len(w.right_period) + len(w.left_period) + len(shift.nu) + 8)
        symbols = [w[i] for i in range(-span - horizon, horizon)]
        return _tails_dominated(symbols, shift)
    return _tails_dominated(list(w), shift)


def _tails_dominated(symbols: list[int], shift: BetaShift) -> bool:
    n = len(symbols)
    for j in range(n):
        for t in range(n - j):
            b = shift.bound_digit(t)
            if symbols[j + t] > b:
                return False
            if symbols[j + t] < b:
                break
    return True


def build_beta_graph(shift: BetaShift, depth: int) -> EdgeShift:
    """Truncated graph presentation on states V_1 .. V_depth.

    Spine edges V_n -> V_{n+1} carry digit nu_n; each state V_n with
    nu_n >= 1 falls back to V_1 on every digit 0 .. nu_n - 1.  Only the
    strongly connected core through V_1 is kept.
    """
    import networkx as nx

    if depth > len(shift.nu):
        raise ValueError("depth exceeds the computed expansion prefix")
    nu = list(shift.nu)
    vertices = ["V%d" % n for n in range(1, depth + 1)]
    edges = []
    for n in range(1, depth + 1):
        digit = nu[n - 1]
        if n < depth:
            edges.append(("V%d" % n, "V%d" % (n + 1), digit))
        for c in range(digit):
            edges.append(("V%d" % n, "V1", c))
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(vertices)
    for s, t, c in edges:
        graph.add_edge(s, t)
    core = next(comp for comp in nx.strongly_connected_components(graph) if "V1" in comp)
    kept_edges = [(s, t, c) for s, t, c in edges if s in core and t in core]
    return EdgeShift(sorted(core), kept_edges, shift.alphabet())


def decide_mixing_beta(shift: BetaShift, roof, depth: int, period_bound: int):
    """Semidecision from periodic orbits through the cylinder [0].

    Orbits are read off the truncated graph; rank >= 2 of their lengths
    certifies mixing, otherwise the common grid is reported up to the
    period bound.
    """
    from suspmix.decider import decide_mixing_synchronized

    graph = build_beta_graph(shift, depth)
    oracle = ShiftOracle.from_edge_shift(graph)
    return decide_mixing_synchronized(oracle, Word([0]), roof, period_bound)


# -- the balanced-2/3 coded subshift ----------------------------------------


@dataclass(frozen=True)
class CodedGenerator:
    """Generating word set of a coded subshift.

    Either an explicit finite set of words, or the named family
    "balanced-23": {2^n 3^n : 1 <= n <= bound} together with {0, 1},
    whose membership problem has a closed form independent of the bound.
    """

    words: tuple[Word, ...] = ()
    family: str = ""
    bound: int = 0

    @classmethod
    def balanced_23(cls, bound: int = 0) -> "CodedGenerator":
        return cls(family="balanced-23", bound=bound)

    @classmethod
    def explicit(cls, words: Iterable[Word]) -> "CodedGenerator":
        words = tuple(words)
        if any(len(w) == 0 for w in words):
            raise ValueError("generator words must be nonempty")
        return cls(words=words)

    def alphabet(self) -> Alphabet:
        if self.family == "balanced-23":
            return Alphabet.of_size(4)
        symbols = sorted({s for w in self.words for s in w})
        return Alphabet(tuple(symbols))


def _runs(symbols: list[int]) -> list[tuple[int, int]]:
    return [(s, len(list(g))) for s, g in itertools.groupby(symbols)]


def _balanced_member(symbols: list[int]) -> bool:
    """Infix test for bi-infinite concatenations of {2^n 3^n} | {0, 1}.

    A maximal 2-run whose right end is visible must be followed by a
    3-run of matching length (relaxed to an inequality when either run is
    cut off by the word boundary); a visible 3-run must be preceded by 2s.
    """
    if any(s not in (0, 1, 2, 3) for s in symbols):
        return False
    runs = _runs(symbols)
    for i, (s, length) in enumerate(runs):
        first, last = i == 0, i == len(runs) - 1
        if s == 2 and not last:
            nxt_s, nxt_len = runs[i + 1]
            if nxt_s != 3:
                return False
            nxt_last = i + 1 == len(runs) - 1
            if first and nxt_last:
                continue  # 2^a 3^b alone embeds in a large block
            if first:
                if nxt_len < length:
                    return False
            elif nxt_last:
                if nxt_len > length:
                    return False
            elif nxt_len != length:
                return False
        if s == 3 and not first and runs[i - 1][0] != 2:
            return False
    return True


def _balanced_periodic(w: Word) -> bool:
    """Whether the bi-infinite repetition of w is in the coded shift."""
    symbols = list(w)
    if len(set(symbols)) == 1:
        return True  # 0-bar, 1-bar, and the closure points 2-bar, 3-bar
    length_w = len(symbols)
    big = symbols * 6
    # annotate runs with start positions; runs overlapping the middle
    # copies are complete, as are their neighbors
    runs = []
    pos = 0
    for s, length in _runs(big):
        runs.append((s, length, pos))
        pos += length
    for i, (s, length, start) in enumerate(runs):
        if not (2 * length_w <= start < 4 * length_w):
            continue
        if s == 2:
            nxt_s, nxt_len, _ = runs[i + 1]
            if nxt_s != 3 or nxt_len != length:
                return False
        if s == 3 and runs[i - 1][0] != 2:
            return False
    return True


def coded_member(gen: CodedGenerator, w: Word, slack: int = 8) -> bool:
    """Membership of w in the language of the coded subshift.

    True iff w is an infix of some bi-infinite concatenation of generator
    words.  Exact in both cases: a closed form for the balanced-23
    family, a boundary-position dynamic program for explicit generators
    (``slack`` is accepted for interface stability but not needed).
    """
    if gen.family == "balanced-23":
        return _balanced_member(list(w))
    return _infix_of_concatenation(list(w), gen.words)


def _infix_of_concatenation(symbols: list[int], words: tuple[Word, ...]) -> bool:
    """Exact infix test: w = (suffix of g_0) g_1 ... g_{k-1} (prefix of g_k)."""
    n = len(symbols)
    if n == 0:
        return True
    # boundary[i]: positions where a gap between generator words can fall
    boundary = [False] * (n + 1)
    boundary[0] = True
    for g in words:
        gl = list(g)
        for cut in range(1, min(len(gl), n) + 1):
            if symbols[:cut] == gl[len(gl) - cut :]:
                boundary[cut] = True
    for i in range(n + 1):
        if not boundary[i]:
            continue
        rest = symbols[i:]
        if not rest or any(list(g)[: n - i] == rest for g in words):
            return True
        for g in words:
            gl = list(g)
            if i + len(gl) <= n and symbols[i : i + len(gl)] == gl:
                boundary[i + len(gl)] = True
    return False


def balanced_oracle() -> ShiftOracle:
    gen = CodedGenerator.balanced_23()
    return ShiftOracle(
        gen.alphabet(),
        is_admissible=lambda w: _balanced_member(list(w)),
        periodic_admissible=_balanced_periodic,
    )


def coded_periodic_in_cylinder(
    gen: CodedGenerator, v: Word, period_bound: int
) -> list[EventuallyPeriodicPoint]:
    """All periodic points w-bar with period <= bound lying in [v]."""
    from suspmix.decider import periodic_words_in_cylinder

    if gen.family != "balanced-23":
        raise NotImplementedError("periodic enumeration is defined for balanced-23")
    words = periodic_words_in_cylinder(balanced_oracle(), v, period_bound)
    return [EventuallyPeriodicPoint.periodic(w) for w in words]


def example_roof_coded(basis) -> "LocallyConstantRoof":
    """Roof a+b on [0] and [1], a on [2], b on [3] over the coded shift.

    ``basis`` must declare constants named "a" and "b"."""
    from suspmix.roofs import LocallyConstantRoof

    a = basis.unit(basis.names.index("a"))
    b = basis.unit(basis.names.index("b"))
    return LocallyConstantRoof.from_symbols({0: a + b, 1: a + b, 2: a, 3: b})


# -- the two-orbit mixing shift ---------------------------------------------


@dataclass
class AperiodicSequence:
    """The {3,4}-valued separator sequence: 3 plus the parity of the
    binary popcount of the index (a cube-free aperiodic sequence)."""

    kind: str = "morse-thue-plus-3"

    def term(self, n: int) -> int:
        if n < 1:
            raise ValueError("terms are indexed from 1")
        return 3 + bin(n - 1).count("1") % 2

    def prefix(self, n: int) -> list[int]:
        return [self.term(i) for i in range(1, n + 1)]


def morse_thue_plus3(n: int) -> list[int]:
    return AperiodicSequence().prefix(n)


_SEQ = AperiodicSequence()
_SEQ_PREFIX_LEN = 4096
_SEQ_PREFIX = _SEQ.prefix(_SEQ_PREFIX_LEN)


def _factor_occurs(interior: list[int], lead: int, trail: int) -> bool:
    """Whether the separator-length pattern occurs in the scaffold sequence.

    ``interior`` must match consecutively; ``lead``/``trail`` are partial
    boundary separators needing neighbors of at least that size (0 when
    absent).
    """
    a = _SEQ_PREFIX
    t = len(interior)
    if t == 0:
        return lead <= 4 and trail <= 4
    for i in range(1, len(a) - t):
        if a[i : i + t] != interior:
            continue
        if lead and a[i - 1] < lead:
            continue
        if trail and (i + t >= len(a) or a[i + t] < trail):
            continue
        return True
    return False


def _is_alternating(seg: list[int]) -> bool:
    return all(seg[i] != seg[i + 1] for i in range(len(seg) - 1))


def _segment_ok(seg: list[int], open_left: bool, open_right: bool, i_cap) -> bool:
    """Whether a maximal 1/01-segment fits the generator inventory.

    Closed segments must be a full generator: 1^j (j >= 2) or the
    alternating word 1(01)^k; open sides relax to suffixes/prefixes.
    """
    if not seg:
        return open_left or open_right
    all_ones = all(s == 1 for s in seg)
    if i_cap is not None:
        alt_cap = 2 * i_cap + 1
    else:
        alt_cap = None
    def alt_len_ok(length):
        return alt_cap is None or length <= alt_cap
    if open_left and open_right:
        return all_ones or (_is_alternating(seg) and alt_len_ok(len(seg)))
    if open_left:
        # suffix of 1^j, or of 1(01)^k: alternating ending in 1
        return all_ones or (
            _is_alternating(seg) and seg[-1] == 1 and alt_len_ok(len(seg))
        )
    if open_right:
        return all_ones or (
            _is_alternating(seg) and seg[0] == 1 and alt_len_ok(len(seg))
        )
    if all_ones:
        return len(seg) >= 2
    return (
        _is_alternating(seg)
        and seg[0] == 1
        and seg[-1] == 1
        and len(seg) % 2 == 1
        and len(seg) >= 3
        and alt_len_ok(len(seg))
    )


def two_orbit_is_admissible(w: Word, i_cap: Optional[int] = None) -> bool:
    """Word membership for the two-orbit mixing shift.

    Points interleave generator words (1-runs of length >= 2 and
    alternating words 1(01)^k, with k <= i_cap when given) with zero
    separators whose lengths follow consecutive terms of the aperiodic
    {3,4} scaffold.  A word is admissible iff its visible separators are
    a factor of the scaffold and the segments between them fit the
    generator inventory, with relaxations at the word boundary.
    """
    symbols = list(w)
    if any(s not in (0, 1) for s in symbols):
        return False
    if not symbols:
        return True

    # candidate parses: a leading/trailing 0-run of length 1 may be either
    # a partial separator or part of an alternating generator word
    runs = _runs(symbols)

    def check(lead_sep: bool, trail_sep: bool) -> bool:
        body = runs[:]
        lead = trail = 0
        if lead_sep:
            if not body or body[0][0] != 0:
                return False
            lead = body[0][1]
            body = body[1:]
        if trail_sep:
            if not body or body[-1][0] != 0:
                return False
            trail = body[-1][1]
            body = body[:-1]
        if lead > 4 or trail > 4:
            return False
        # split body into segments at 0-runs of length >= 2 (separators)
        segments: list[list[int]] = [[]]
        interior: list[int] = []
        for s, length in body:
            if s == 0 and length >= 2:
                interior.append(length)
                segments.append([])
            else:
                segments[-1].extend([s] * length)
        if any(v not in (3, 4) for v in interior):
            return False
        if not _factor_occurs(interior, lead, trail):
            return False
        for idx, seg in enumerate(segments):
            open_left = idx == 0 and not lead_sep
            open_right = idx == len(segments) - 1 and not trail_sep
            if not _segment_ok(seg, open_left, open_right, i_cap):
                return False
        return True

    lead_options = [False]
    trail_options = [False]
    if runs[0][0] == 0:
        lead_options = [True] if runs[0][1] >= 2 else [False, True]
    if runs[-1][0] == 0:
        if len(runs) == 1:
            trail_options = [False]
        elif runs[-1][1] >= 2:
            trail_options = [True]
        else:
            trail_options = [False, True]
    return any(check(l, t) for l in lead_options for t in trail_options)


def two_orbit_periodic_admissible(w: Word) -> bool:
    """Whether the bi-infinite repetition of w lies in the two-orbit shift."""
    if len(w) == 0:
        return False
    reps = max(6, -(-140 // len(w)))
    return two_orbit_is_admissible(w * reps)


def two_orbit_oracle(i_cap: Optional[int] = None) -> ShiftOracle:
    return ShiftOracle(
        Alphabet.of_size(2),
        is_admissible=lambda w: two_orbit_is_admissible(w, i_cap),
        periodic_admissible=two_orbit_periodic_admissible,
    )


def two_orbit_shift_words(i: Optional[int], max_len: int) -> Iterator[Word]:
    """All admissible words of length 1 .. max_len, by pruned DFS."""

    def dfs(prefix: list[int]) -> Iterator[Word]:
        if prefix:
            yield Word(prefix)
        if len(prefix) == max_len:
            return
        for s in (0, 1):
            prefix.append(s)
            if two_orbit_is_admissible(Word(prefix), i):
                yield from dfs(prefix)
            prefix.pop()

    yield from dfs([])


def two_orbit_periodic_words(period_bound: int) -> list[Word]:
    """All words w with |w| <= bound whose repetition is in the shift."""
    found = []
    for q in range(1, period_bound + 1):
        for bits in itertools.product((0, 1), repeat=q):
            w = Word(bits)
            if two_orbit_is_admissible(w) and two_orbit_periodic_admissible(w):
                found.append(w)
    return found


def find_connector(
    u: Word, v: Word, n: int, i_cap: Optional[int] = None, horizon: int = 12
) -> Optional[Word]:
    """A connector w with u w v admissible containing the block 0 1^n 0.

    The 1-run of length n is the parameter exhibiting mixing: as n grows
    the family realizes transition words of every sufficiently large
    length.  Padding on either side of the block is searched up to
    ``horizon`` symbols by DFS with admissibility pruning.
    """
    if n < 2:
        raise ValueError("the 1-run must have length >= 2")
    admissible = lambda word: two_orbit_is_admissible(word, i_cap)
    if not admissible(u) or not admissible(v):
        raise ValueError("endpoints must be admissible")
    core = Word([0] + [1] * n + [0])

    def extensions(start: Word, budget: int) -> Iterator[Word]:
        yield start
        if budget:
            for s in (0, 1):
                cand = start + Word([s])
                if admissible(u + cand):
                    yield from extensions(cand, budget - 1)

    for pad in extensions(Word(), horizon):
        base = pad + core
        if not admissible(u + base):
            continue
        for w in extensions(base, horizon):
            if admissible(u + w + v):
                return w
    return None
