"""Per-class dispatch from instance text to a decision and certificate."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .bipperm import StrongOrdering, bipperm_partition, compute_strong_ordering, validate_strong_ordering
from .cograph import build_cotree, cograph_partition
from .formats import FormatError, format_graph, parse_bipartite, parse_graph, parse_intervals
from .graph import BipartiteGraph, Block, Graph, StarPartition
from .interval import (
    IntervalRepresentation,
    OpenProblemError,
    interval_partition,
    normalize_events,
    p3_decide,
    unit_interval_partition,
)
from .matching import max_bipartite_matching
from .oracle import BudgetExceeded, oracle_partition
from .split import InstanceTooLarge, build_bstar, split_decompose, split_partition

CLASSES = ("unit-interval", "interval", "bip-perm", "cograph", "split", "oracle")


class Refused(Exception):
    """The request is outside what can be answered exactly here."""


@dataclass
class Outcome:
    answer: bool
    partition: StarPartition | None
    graph: Graph
    notes: list[str] = field(default_factory=list)


def _header_width(text: str) -> int:
    for ln in text.splitlines():
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            return len(ln.split())
    raise FormatError("empty input")


def load_graph(text: str) -> Graph:
    """Graph from any supported instance format, told apart by the number
    of fields on the header line: 1 intervals, 2 graph, 3 bipartite."""
    width = _header_width(text)
    if width == 1:
        return IntervalRepresentation(tuple(parse_intervals(text))).to_graph()
    if width == 2:
        return parse_graph(text)
    if width == 3:
        return parse_bipartite(text)[0].to_graph()
    raise FormatError(f"unrecognized header with {width} fields")


def two_coloring(g: Graph) -> BipartiteGraph:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    raise ValueError("graph is not bipartite")
    left = tuple(v for v in range(g.n) if side[v] == 0)
    right = tuple(v for v in range(g.n) if side[v] == 1)
    return BipartiteGraph(left, right, tuple(sorted((u, w) if side[u] == 0 else (w, u) for u, w in g.edges)))


def _matching_partition(b: BipartiteGraph) -> StarPartition | None:
    mt = max_bipartite_matching(b)
    return StarPartition(1, tuple(Block(a, (c,)) for a, c in mt.pairs)) if mt.is_perfect else None


def _intervals(text: str) -> IntervalRepresentation:
    if _header_width(text) != 1:
        raise FormatError("this class expects the interval format ('n' then 'id birth death' lines)")
    return IntervalRepresentation(tuple(parse_intervals(text)))


def solve_text(
    cls: str,
    s: int,
    text: str,
    *,
    budget: int | None = None,
    trace: bool = False,
    dump_gadget: bool = False,
    dump_cotree: bool = False,
) -> Outcome:
    """Decide the instance in ``text`` for class ``cls``.

    Raises :class:`Refused` for open or NP-hard cases and exhausted
    budgets, and ``ValueError`` (including ``FormatError``) for bad input.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    notes: list[str] = []
    try:
        if cls == "unit-interval":
            rep = _intervals(text)
            lengths = {Fraction(d) - Fraction(b) for _, b, d in rep.intervals}
            if len(lengths) > 1:
                raise ValueError("unit-interval input must use one common interval length")
            return _outcome(unit_interval_partition(rep, s), rep.to_graph(), notes)
        if cls == "interval":
            rep = normalize_events(_intervals(text).intervals)
            if trace:
                if s != 2:
                    raise ValueError("--trace is available for s = 2 only")
                res = p3_decide(rep)
                notes.append("sizes: " + " ".join(map(str, res.sizes)))
            try:
                part = interval_partition(rep, s)
            except OpenProblemError as exc:
                raise Refused(str(exc)) from None
            return _outcome(part, rep.to_graph(), notes)
        if cls == "bip-perm":
            if _header_width(text) == 3:
                b, order = parse_bipartite(text)
            else:
                b, order = two_coloring(parse_graph(text)), None
            if s == 1:
                return _outcome(_matching_partition(b), b.to_graph(), notes)
            if order is not None:
                ordering = StrongOrdering(tuple(order[0]), tuple(order[1]))
                if not validate_strong_ordering(b, ordering):
                    raise ValueError("the supplied order is not a strong ordering")
            else:
                ordering = compute_strong_ordering(b)
                if ordering is None:
                    raise ValueError("graph is not a bipartite permutation graph (no strong ordering found)")
            return _outcome(bipperm_partition(b, ordering, s), b.to_graph(), notes)
        g = load_graph(text)
        if cls == "cograph":
            tree = build_cotree(g) if g.n else None
            if g.n and tree is None:
                raise ValueError("graph is not a cograph (it has an induced P4)")
            if dump_cotree and tree is not None:
                notes.append("cotree: " + tree.sexpr())
            part = cograph_partition(g, s, tree) if g.n else StarPartition(s, ())
            return _outcome(part, g, notes)
        if cls == "split":
            sd = split_decompose(g)
            if sd is None:
                raise ValueError("graph is not a split graph")
            if dump_gadget and s == 2:
                gg = build_bstar(sd, g)
                if gg is not None:
                    notes.append(format_graph(gg.graph, [f"{i} {lab}" for i, lab in enumerate(gg.label)]).rstrip("\n"))
            return _outcome(split_partition(g, s, budget=budget), g, notes)
        return _outcome(oracle_partition(g, s, budget), g, notes)
    except InstanceTooLarge as exc:
        raise Refused(str(exc)) from None
    except BudgetExceeded as exc:
        raise Refused(str(exc)) from None


def _outcome(part: StarPartition | None, g: Graph, notes: list[str]) -> Outcome:
    return Outcome(part is not None, part, g, notes)
