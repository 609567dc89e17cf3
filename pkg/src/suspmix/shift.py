"""Shift spaces presented as labeled directed multigraphs.

Subshifts of finite type (and truncated graph presentations of other
shifts) are stored as edge shifts: finite directed multigraphs with one
alphabet symbol per edge.  The points of the shift are the bi-infinite
label sequences of bi-infinite edge walks.  All presentations are kept
essential (every vertex has an incoming and an outgoing edge).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx


class EmptyShiftError(ValueError):
    """Raised when a construction yields a shift with no points."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbols.

    Symbols are small non-negative integers; ``names`` optionally maps
    them to display strings (defaulting to their decimal form).
    """

    symbols: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbols in alphabet")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(s) for s in self.symbols))
        if len(self.names) != len(self.symbols):
            raise ValueError("names must match symbols one-to-one")

    @classmethod
    def of_size(cls, n: int) -> "Alphabet":
        return cls(tuple(range(n)))

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def name_of(self, symbol: int) -> str:
        return self.names[self.symbols.index(symbol)]


@dataclass(frozen=True, order=True)
class Word:
    """A finite string of symbols; compares lexicographically."""

    symbols: tuple[int, ...]

    def __init__(self, symbols: Iterable[int] = ()):
        object.__setattr__(self, "symbols", tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i):
        got = self.symbols[i]
        return Word(got) if isinstance(i, slice) else got

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols)

    def __mul__(self, k: int) -> "Word":
        return Word(self.symbols * k)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols) if self.symbols else "ε"

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Word from a string of single-character decimal symbols."""
        return cls(int(c) for c in text.strip())


@dataclass(frozen=True)
class Edge:
    """One labeled edge of an EdgeShift."""

    source: object
    target: object
    label: int


class EdgeShift:
    """A shift space presented by a finite labeled directed multigraph.

    Parameters
    ----------
    vertices : iterable
        Hashable vertex names.
    edges : iterable of (source, target, label)
        Directed labeled edges; parallel edges are allowed.
    alphabet : Alphabet
        Ambient alphabet; every edge label must belong to it.
    essentialize : bool
        Prune vertices without incoming or outgoing edges (default True).

    Raises
    ------
    EmptyShiftError
        If pruning removes every vertex.
    """

    def __init__(self, vertices, edges, alphabet: Alphabet, essentialize: bool = True):
        vertices = list(dict.fromkeys(vertices))
        edges = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        for e in edges:
            if e.label not in alphabet:
                raise ValueError("edge label %r outside alphabet" % (e.label,))
            if e.source not in vertices or e.target not in vertices:
                raise ValueError("edge %r uses undeclared vertex" % (e,))
        if essentialize:
            vertices, edges = _essential_part(vertices, edges)
        if not vertices:
            raise EmptyShiftError("presentation has no bi-infinite walks")
        self.vertices: tuple = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(edges)
        self.alphabet = alphabet
        self._out: dict = {v: [] for v in self.vertices}
        self._in: dict = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            self._out[e.source].append(i)
            self._in[e.target].append(i)

    # -- basic queries ------------------------------------------------------

    def out_edges(self, v) -> list[int]:
        """Indices into ``edges`` of the out-edges of v."""
        return self._out[v]

    def in_edges(self, v) -> list[int]:
        return self._in[v]

    def is_right_resolving(self) -> bool:
        for v in self.vertices:
            labels = [self.edges[i].label for i in self._out[v]]
            if len(labels) != len(set(labels)):
                return False
        return True

    def step(self, states: set, symbol: int) -> set:
        """Targets of edges labeled ``symbol`` leaving any state in ``states``."""
        out = set()
        for v in states:
            for i in self._out[v]:
                if self.edges[i].label == symbol:
                    out.add(self.edges[i].target)
        return out

    def terminal_vertices(self, w: Word) -> set:
        """Endpoints of all edge paths spelling w (all start vertices)."""
        states = set(self.vertices)
        for s in w:
            states = self.step(states, s)
            if not states:
                break
        return states

    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for i, e in enumerate(self.edges):
            g.add_edge(e.source, e.target, key=i, label=e.label)
        return g

    def __repr__(self) -> str:
        return "EdgeShift(%d vertices, %d edges)" % (len(self.vertices), len(self.edges))


def _essential_part(vertices, edges):
    """Iteratively drop vertices lacking in- or out-edges."""
    vset = set(vertices)
    while True:
        kept = [e for e in edges if e.source in vset and e.target in vset]
        alive = {v for v in vset if any(e.source == v for e in kept)
                 and any(e.target == v for e in kept)}
        if alive == vset:
            return [v for v in vertices if v in vset], kept
        vset = alive
        edges = kept


# -- constructors -----------------------------------------------------------


def full_shift(alphabet: Alphabet) -> EdgeShift:
    """The full shift: one vertex with a self-loop per symbol."""
    return EdgeShift(["*"], [("*", "*", s) for s in alphabet.symbols], alphabet)


def sft_from_forbidden_words(alphabet: Alphabet, forbidden: Iterable[Word]) -> EdgeShift:
    """SFT of all bi-infinite sequences avoiding every forbidden word.

    Built as a higher-block graph on windows of length max|forbidden| - 1
    and pruned to its essential part.

    Raises
    ------
    EmptyShiftError
        If every sufficiently long word contains a forbidden word.
    """
    forbidden = {tuple(w) for w in forbidden}
    if not forbidden:
        return full_shift(alphabet)
    if any(len(f) < 2 for f in forbidden):
        raise ValueError("forbidden words must have length >= 2")
    k = max(len(f) for f in forbidden)

    def clean(block):
        return not any(
            block[i : i + len(f)] == f
            for f in forbidden
            for i in range(len(block) - len(f) + 1)
        )

    blocks = [b for b in itertools.product(alphabet.symbols, repeat=k - 1) if clean(b)]
    edges = []
    for b in blocks:
        for c in alphabet.symbols:
            if clean(b + (c,)):
                edges.append((Word(b), Word(b[1:] + (c,)), c))
    try:
        return EdgeShift([Word(b) for b in blocks], edges, alphabet)
    except EmptyShiftError:
        raise EmptyShiftError("every bi-infinite sequence hits a forbidden word")


def higher_block_recode(shift: EdgeShift, k: int) -> tuple[EdgeShift, dict[int, Word]]:
    """Conjugate presentation whose vertices are admissible k-blocks.

    For non-right-resolving input the graph is first determinized so that
    blocks pin down path endpoints.  Vertices are (endpoint, k-block)
    pairs, displayed as plain k-blocks whenever the block alone determines
    the endpoint.  Edge labels give the symbol appended on the right, so
    the label language is unchanged.

    Returns
    -------
    (EdgeShift, dict)
        The recoded shift and a map from its edge indices to the
        (k+1)-block window each edge reads.
    """
    if k < 1:
        raise ValueError("block length must be >= 1")
    base = shift if shift.is_right_resolving() else determinize(shift)
    # (endpoint vertex, k-block) pairs realized by length-k paths
    pairs = set()
    for v in base.vertices:
        frontier = {(v, ())}
        for _ in range(k):
            nxt = set()
            for u, blk in frontier:
                for i in base.out_edges(u):
                    e = base.edges[i]
                    nxt.add((e.target, blk + (e.label,)))
            frontier = nxt
        pairs |= frontier
    by_block: dict[tuple, set] = {}
    for v, blk in pairs:
        by_block.setdefault(blk, set()).add(v)

    def name(v, blk):
        return Word(blk) if len(by_block[blk]) == 1 else (v, Word(blk))

    vertices = [name(v, blk) for v, blk in sorted(pairs, key=lambda p: (p[1], str(p[0])))]
    edges = []
    windows = []
    for v, blk in sorted(pairs, key=lambda p: (p[1], str(p[0]))):
        for i in base.out_edges(v):
            e = base.edges[i]
            edges.append((name(v, blk), name(e.target, blk[1:] + (e.label,)), e.label))
            windows.append(Word(blk + (e.label,)))
    recoded = EdgeShift(vertices, edges, shift.alphabet, essentialize=False)
    window_map = {i: w for i, w in enumerate(windows)}
    return recoded, window_map


def determinize(shift: EdgeShift) -> EdgeShift:
    """Right-resolving presentation of the same language by subset construction."""
    start = frozenset(shift.vertices)
    states = {start}
    queue = [start]
    edges = []
    while queue:
        s = queue.pop()
        for c in shift.alphabet.symbols:
            t = frozenset(shift.step(set(s), c))
            if not t:
                continue
            edges.append((s, t, c))
            if t not in states:
                states.add(t)
                queue.append(t)
    return EdgeShift(states, edges, shift.alphabet)


# -- language and structure -------------------------------------------------


def is_word_admissible(shift: EdgeShift, w: Word) -> bool:
    """True iff some edge path spells w."""
    for s in w:
        if s not in shift.alphabet:
            raise ValueError("symbol %r outside alphabet" % (s,))
    return len(w) == 0 or bool(shift.terminal_vertices(w))


def admissible_words(shift: EdgeShift, length: int) -> list[Word]:
    """All admissible words of exactly the given length."""
    frontier: dict[tuple, set] = {(): set(shift.vertices)}
    for _ in range(length):
        nxt: dict[tuple, set] = {}
        for blk, states in frontier.items():
            for c in shift.alphabet.symbols:
                t = shift.step(states, c)
                if t:
                    nxt.setdefault(blk + (c,), set()).update(t)
        frontier = nxt
    return sorted(Word(b) for b in frontier)


def is_transitive(shift: EdgeShift) -> bool:
    """True iff the presenting graph is strongly connected."""
    return nx.is_strongly_connected(shift.digraph())


def base_period(shift: EdgeShift) -> int:
    """gcd of the lengths of all cycles; the base shift is mixing iff 1."""
    if not is_transitive(shift):
        raise ValueError("base_period requires a strongly connected presentation")
    root = shift.vertices[0]
    level = {root: 0}
    queue = [root]
    g = 0
    while queue:
        u = queue.pop()
        for i in shift.out_edges(u):
            v = shift.edges[i].target
            if v in level:
                g = math.gcd(g, level[u] + 1 - level[v])
            else:
                level[v] = level[u] + 1
                queue.append(v)
    # revisit all edges once levels are complete
    for e in shift.edges:
        g = math.gcd(g, level[e.source] + 1 - level[e.target])
    return abs(g) if g else 1


def is_synchronizing(shift: EdgeShift, v: Word) -> bool:
    """True iff all paths spelling v end at a single vertex.

    Applied on a right-resolving presentation (the follower-set
    criterion); non-right-resolving input is determinized first.
    """
    base = shift if shift.is_right_resolving() else determinize(shift)
    terminals = base.terminal_vertices(v)
    if not terminals:
        raise ValueError("word %s is not admissible" % (v,))
    return len(terminals) == 1


def cycles_up_to(shift: EdgeShift, length: int) -> list[list[int]]:
    """All closed edge paths (as edge-index lists) of length 1..length.

    Rotations count once: each cycle is reported only from its smallest
    starting vertex occurrence.  Intended for small graphs and oracles.
    """
    found = []

    def extend(path, start, current):
        if len(path) >= 1 and current == start:
            found.append(list(path))
        if len(path) == length:
            return
        for i in shift.out_edges(current):
            path.append(i)
            extend(path, start, shift.edges[i].target)
            path.pop()

    for v in shift.vertices:
        extend([], v, v)
    # deduplicate rotations
    seen = set()
    out = []
    for cyc in found:
        key = min(tuple(cyc[r:] + cyc[:r]) for r in range(len(cyc)))
        if key not in seen:
            seen.add(key)
            out.append(cyc)
    return out


# -- points -----------------------------------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """A bi-infinite sequence: periodic left tail, finite core, periodic right tail.

    The core occupies indices ``[-origin_offset, -origin_offset + len(core))``;
    the right tail repeats from where the core ends, the left tail repeats
    leftward from where the core begins.

    Examples
    --------
    >>> p = EventuallyPeriodicPoint.periodic(Word.parse("01"))
    >>> [p[i] for i in range(-2, 4)]
    [0, 1, 0, 1, 0, 1]
    """

    left_period: Word
    core: Word
    right_period: Word
    origin_offset: int = 0

    def __post_init__(self):
        if len(self.left_period) == 0 or len(self.right_period) == 0:
            raise ValueError("periodic tails must be nonempty")

    @classmethod
    def periodic(cls, w: Word) -> "EventuallyPeriodicPoint":
        """The periodic point w-repeated, with w starting at index 0."""
        return cls(w, Word(), w, 0)

    @classmethod
    def from_parts(cls, left: Word, core: Word, right: Word, origin_offset: int = 0):
        return cls(left, core, right, origin_offset)

    def __getitem__(self, i: int) -> int:
        start = -self.origin_offset
        if i < start:
            return self.left_period[(i - start) % len(self.left_period)]
        if i < start + len(self.core):
            return self.core[i - start]
        return self.right_period[(i - start - len(self.core)) % len(self.right_period)]

    def window(self, lo: int, hi: int) -> Word:
        """The word at indices lo..hi inclusive."""
        return Word(self[i] for i in range(lo, hi + 1))

    def shift(self) -> "EventuallyPeriodicPoint":
        """The image under the shift map: position n reads old position n+1."""
        if len(self.core) == 0:
            if self.left_period == self.right_period:
                w = self.right_period
                return EventuallyPeriodicPoint(
                    Word(w[1:]) + Word(w[:1]), Word(), Word(w[1:]) + Word(w[:1]), 0
                )
            # keep offsets explicit when the two tails differ
            core = Word([self.right_period[0]])
            return EventuallyPeriodicPoint(
                self.left_period,
                core,
                Word(self.right_period[1:]) + Word(self.right_period[:1]),
                self.origin_offset + 1,
            )
        off = self.origin_offset + 1
        core, right = self.core, self.right_period
        if off > len(core):
            core = core + Word([right[0]])
            right = Word(right[1:]) + Word(right[:1])
        return EventuallyPeriodicPoint(self.left_period, core, right, off)

    def unshift(self) -> "EventuallyPeriodicPoint":
        """The shift preimage: position n reads old position n-1."""
        if len(self.core) == 0 and self.left_period == self.right_period:
            w = self.right_period
            rotated = Word(w[-1:]) + Word(w[:-1])
            return EventuallyPeriodicPoint(rotated, Word(), rotated, 0)
        if self.origin_offset == 0:
            left = self.left_period
            core = Word(left[-1:]) + self.core
            rotated = Word(left[-1:]) + Word(left[:-1])
            return EventuallyPeriodicPoint(rotated, core, self.right_period, 0)
        return EventuallyPeriodicPoint(
            self.left_period, self.core, self.right_period, self.origin_offset - 1
        )

    def shifted(self, n: int) -> "EventuallyPeriodicPoint":
        p = self
        for _ in range(abs(n)):
            p = p.shift() if n > 0 else p.unshift()
        return p

    def is_periodic_with(self, q: int) -> bool:
        """Exact check that the whole sequence has period q."""
        if q < 1:
            return False
        span = (
            len(self.core)
            + q
            + math.lcm(q, len(self.left_period))
            + math.lcm(q, len(self.right_period))
        )
        lo = -self.origin_offset - span
        hi = -self.origin_offset + len(self.core) + span
        return all(self[i] == self[i + q] for i in range(lo, hi + 1))

    def minimal_period(self) -> int | None:
        """Smallest period, or None if the point is not periodic."""
        bound = len(self.core) + math.lcm(len(self.left_period), len(self.right_period))
        for q in range(1, bound + 1):
            if self.is_periodic_with(q):
                return q
        return None


def close_orbit(shift: EdgeShift, w: Word) -> EventuallyPeriodicPoint:
    """The periodic point spelled by a closed path labeled w.

    Raises
    ------
    ValueError
        If no path spelling w starts and ends at the same vertex.
    """
    if len(w) == 0:
        raise ValueError("cannot close the empty word")
    for v in shift.vertices:
        states = {v}
        for s in w:
            states = shift.step(states, s)
        if v in states:
            return EventuallyPeriodicPoint.periodic(w)
    raise ValueError("no closed path spells %s" % (w,))


def point_symbol(p: EventuallyPeriodicPoint, i: int) -> int:
    return p[i]


def shift_point(p: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    return p.shift()


def contains_point(shift: EdgeShift, p: EventuallyPeriodicPoint) -> bool:
    """True iff the bi-infinite sequence of p lies in the shift.

    Checks admissibility of a central window long enough that a path
    spelling it can be pumped to a bi-infinite walk (the window covers
    the core plus |V|+1 repetitions of each tail period).
    """
    reps = len(shift.vertices) + 1
    lo = -p.origin_offset - reps * len(p.left_period)
    hi = -p.origin_offset + len(p.core) + reps * len(p.right_period)
    return is_word_admissible(shift, p.window(lo, hi))
