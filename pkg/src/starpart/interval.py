"""Star partitions of interval graphs.

Unit interval graphs are handled for every ``s`` by a left-to-right greedy.
General interval graphs are handled for ``s = 2`` by a sweep over event
points that keeps two "handles" per live interval in a list ordered by end
point, and spends three handles whenever a live interval with handles ends.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from sortedcontainers import SortedList

from .graph import Block, Graph, StarPartition


class OpenProblemError(ValueError):
    """No polynomial-time method is known for the requested case."""


class SweepInvariantError(AssertionError):
    """Internal bookkeeping of the sweep went out of sync (a bug)."""


@dataclass(frozen=True)
class IntervalRepresentation:
    """Right-open intervals ``[birth, death)`` keyed by id.

    When ``normalized`` the ``2n`` event positions are exactly ``1..2n``.
    """

    intervals: tuple[tuple[int, Real, Real], ...]
    normalized: bool = False

    def __post_init__(self):
        for i, b, d in self.intervals:
            if not b < d:
                raise ValueError(f"interval {i}: birth {b} must be smaller than death {d}")
        if self.normalized:
            points = sorted(p for _, b, d in self.intervals for p in (b, d))
            if points != list(range(1, 2 * len(self.intervals) + 1)):
                raise ValueError("normalized events must be exactly 1..2n")

    @property
    def n(self) -> int:
        return len(self.intervals)

    def births(self) -> dict[int, Real]:
        return {i: b for i, b, _ in self.intervals}

    def deaths(self) -> dict[int, Real]:
        return {i: d for i, _, d in self.intervals}

    def to_graph(self) -> Graph:
        """Intersection graph; ids must be ``0..n-1``."""
        rep = self if self.normalized else normalize_events(self.intervals)
        events = _event_table(rep)
        active: set[int] = set()
        edges = []
        for t in range(1, 2 * rep.n + 1):
            x, is_birth = events[t]
            if is_birth:
                edges.extend((x, y) for y in active)
                active.add(x)
            else:
                active.discard(x)
        return Graph(rep.n, edges)


def overlaps(a: tuple[int, Real, Real], b: tuple[int, Real, Real]) -> bool:
    return a[1] < b[2] and b[1] < a[2]


def normalize_events(raw: Iterable[tuple[int, Real, Real]]) -> IntervalRepresentation:
    """Rank all births and deaths onto distinct positions ``1..2n``.

    At equal coordinates deaths come before births, so touching right-open
    intervals stay disjoint; equal events of the same kind are ordered by id.
    The intersection graph is preserved.
    """
    raw = [(i, Fraction(b), Fraction(d)) for i, b, d in raw]
    for i, b, d in raw:
        if not b < d:
            raise ValueError(f"interval {i}: birth {b} must be smaller than death {d}")
    events = sorted(
        [(b, 1, i) for i, b, _ in raw] + [(d, 0, i) for i, _, d in raw]
    )
    birth: dict[int, int] = {}
    death: dict[int, int] = {}
    for pos, (_, kind, i) in enumerate(events, start=1):
        (birth if kind else death)[i] = pos
    return IntervalRepresentation(
        tuple(sorted((i, birth[i], death[i]) for i, _, _ in raw)), normalized=True
    )


def _event_table(rep: IntervalRepresentation) -> list[tuple[int, bool]]:
    table: list[tuple[int, bool]] = [(-1, False)] * (2 * rep.n + 1)
    for i, b, d in rep.intervals:
        table[b] = (i, True)
        table[d] = (i, False)
    return table


class HandleList:
    """Multiset of interval ids ordered by decreasing death, then id.

    Index 0 is the top (latest death); the "lowest" elements are the ones
    ending first.  Backed by a balanced sorted list, O(log n) per operation.
    """

    def __init__(self, death: dict[int, Real] | Sequence[Real], items: Iterable[int] = ()):
        self._death = death
        self._items = SortedList(key=self._key)
        self._count: dict[int, int] = {}
        for x in items:
            self.insert(x)

    def _key(self, x: int):
        return (-self._death[x], x)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, x: int) -> bool:
        return self._count.get(x, 0) > 0

    def __iter__(self):
        return iter(self._items)

    def count(self, x: int) -> int:
        return self._count.get(x, 0)

    def insert(self, *xs: int) -> None:
        for x in xs:
            if self._count.get(x, 0) >= 2:
                raise SweepInvariantError(f"interval {x} would get a third handle")
            self._items.add(x)
            self._count[x] = self._count.get(x, 0) + 1

    def delete(self, x: int) -> None:
        """Remove one copy of ``x``; no-op if absent."""
        if self._count.get(x, 0):
            self._items.remove(x)
            self._drop(x)

    def _drop(self, x: int) -> None:
        c = self._count[x] - 1
        if c:
            self._count[x] = c
        else:
            del self._count[x]

    def lowest(self, k: int = 1) -> list[int]:
        """The ``k`` lowest elements, lowest first."""
        return [self._items[-1 - j] for j in range(min(k, len(self._items)))]

    def pop_lowest(self, k: int) -> list[int]:
        out = []
        for _ in range(k):
            x = self._items.pop()
            self._drop(x)
            out.append(x)
        return out

    def as_list(self) -> list[int]:
        return list(self._items)

    def copy(self) -> HandleList:
        return HandleList(self._death, self._items)

    def lessgood(self, other: HandleList) -> bool:
        """``self`` is dominated by ``other``: no longer, and each position
        (top-down) ends no later than the aligned position of ``other``."""
        if len(self) > len(other):
            return False
        return all(
            self._death[a] <= other._death[b] for a, b in zip(self._items, other._items)
        )


@dataclass(frozen=True)
class SweepResult:
    decision: bool
    sizes: tuple[int, ...]
    partition: StarPartition | None = None

    def __bool__(self) -> bool:
        return self.decision


def _sweep(rep: IntervalRepresentation, build: bool) -> SweepResult:
    if not rep.normalized:
        raise ValueError("the sweep needs a normalized representation")
    events = _event_table(rep)
    death = [0] * (max((i for i, _, _ in rep.intervals), default=-1) + 1)
    birth = list(death)
    for i, b, d in rep.intervals:
        birth[i] = b
        death[i] = d
    handles = HandleList(death)
    sizes = [0]
    mate: dict[int, int] = {}  # edge part: handle holder -> partner without handles
    blocks: list[Block] = []

    def triple(a: int, b: int, c: int) -> None:
        members = sorted((a, b, c))
        for v in members:
            if all(v == w or (birth[v] < death[w] and birth[w] < death[v]) for w in members):
                blocks.append(Block(v, tuple(w for w in members if w != v)))
                return
        raise SweepInvariantError(f"merged triple {members} contains no P3")

    for t in range(1, 2 * rep.n + 1):
        x, is_birth = events[t]
        if handles and death[handles.lowest()[0]] < t:
            raise SweepInvariantError(f"handle list holds an interval that ended before {t}")
        if is_birth:
            handles.insert(x, x)
        elif x in handles:
            if len(handles) < 3:
                return SweepResult(False, tuple(sizes))
            occ = {}
            low = handles.lowest(3)
            for v in low:
                occ[v] = handles.count(v)
            a, b, c = handles.pop_lowest(3)
            if a != x:
                raise SweepInvariantError(f"lowest handle at death of {x} belongs to {a}")
            if build:
                if b == a:
                    if occ[c] == 2:
                        mate[c] = a
                    else:
                        triple(a, c, mate.pop(c))
                elif c == b:
                    triple(a, c, mate.pop(a))
                else:
                    u, v = mate.pop(a), mate.pop(b)
                    first, second = (b, a) if birth[b] < birth[a] else (a, b)
                    triple(first, u, v)
                    if occ[c] == 2:
                        mate[c] = second
                    else:
                        triple(second, c, mate.pop(c))
            if x in handles:
                raise SweepInvariantError(f"interval {x} still holds handles after its death")
        sizes.append(len(handles))
    if build:
        if mate or len(handles):
            raise SweepInvariantError("sweep finished with unmatched parts")
        return SweepResult(True, tuple(sizes), StarPartition(2, tuple(blocks)))
    return SweepResult(True, tuple(sizes))


def p3_decide(rep: IntervalRepresentation) -> SweepResult:
    """Decide whether the interval graph has a P3-partition.

    ``result.sizes[t]`` is the handle-list size after event ``t``; the
    trace stops at the failing event when the answer is no.
    """
    return _sweep(rep, build=False)


def p3_construct(rep: IntervalRepresentation) -> StarPartition | None:
    """Same sweep as :func:`p3_decide`, merging a partial partition of
    singletons, edges and triples alongside the handle list."""
    return _sweep(rep, build=True).partition


def interval_components(rep: IntervalRepresentation) -> list[list[int]]:
    order = sorted(rep.intervals, key=lambda iv: (iv[1], iv[2], iv[0]))
    comps: list[list[int]] = []
    reach = None
    for i, b, d in order:
        if reach is None or b >= reach:
            comps.append([])
            reach = d
        comps[-1].append(i)
        reach = max(reach, d)
    return comps


def unit_interval_partition(rep: IntervalRepresentation, s: int) -> StarPartition | None:
    """Greedy: repeatedly cut off the ``s + 1`` leftmost intervals as a star.

    Correct when the birth order is a bicompatible elimination order, which
    holds for equal-length intervals.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if any(len(c) % (s + 1) for c in interval_components(rep)):
        return None
    order = sorted(rep.intervals, key=lambda iv: (iv[1], iv[2], iv[0]))
    blocks = []
    for start in range(0, len(order), s + 1):
        group = sorted(order[start : start + s + 1])
        center = None
        for cand in group:
            if sum(1 for other in group if other is not cand and overlaps(cand, other)) >= s:
                center = cand[0]
                break
        if center is None:
            return None
        blocks.append(Block(center, tuple(iv[0] for iv in group if iv[0] != center)))
    return StarPartition(s, tuple(blocks))


def interval_partition(rep: IntervalRepresentation, s: int) -> StarPartition | None:
    """Dispatch for general interval graphs; ``s >= 3`` is refused."""
    if s == 2:
        return p3_construct(rep if rep.normalized else normalize_events(rep.intervals))
    if s == 1:
        from .matching import max_cardinality_matching

        g = rep.to_graph()
        mt = max_cardinality_matching(g)
        if not mt.is_perfect:
            return None
        return StarPartition(1, tuple(Block(a, (b,)) for a, b in mt.pairs))
    raise OpenProblemError(
        "open problem: no polynomial-time algorithm is known for s >= 3 on interval graphs"
    )
