"""Seeded instance streams and brute-force helpers shared by the tests."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

from starpart.bipperm import star_counts
from starpart.cograph import CotreeNode, evaluate, leaf
from starpart.generators import (
    random_bip_perm,
    random_cotree,
    random_intervals,
    random_split,
    random_unit_intervals,
)
from starpart.graph import Graph
from starpart.interval import normalize_events

SIX = normalize_events([(0, 1, 9), (1, 2, 3), (2, 4, 6), (3, 5, 8), (4, 7, 11), (5, 10, 12)])
SIX_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (3, 4), (4, 5)]
SIX_TRACE = (0, 2, 4, 1, 3, 5, 2, 4, 1, 1, 3, 0, 0)

# clique c1..c6 = 0..5, independent i1..i6 = 6..11
SPLIT12_CI = [(0, 6), (0, 7), (1, 8), (1, 9), (2, 6), (2, 9), (3, 11), (4, 8), (4, 10), (5, 10), (5, 11)]
SPLIT12 = Graph(12, SPLIT12_CI + list(combinations(range(6), 2)))


def pick_n(rng: random.Random, s: int, limit: int = 15) -> int:
    """Mostly multiples of ``s + 1`` (where the answer is interesting),
    sometimes any size."""
    if rng.random() < 0.15:
        return rng.randint(1, limit)
    return (s + 1) * rng.randint(1, limit // (s + 1))


def interval_stream(count: int, seed: int, limit: int = 15):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_intervals(pick_n(rng, 2, limit), rng)


def unit_interval_stream(count: int, seed: int, limit: int = 15):
    rng = random.Random(seed)
    for _ in range(count):
        s = rng.choice((1, 2, 3))
        yield random_unit_intervals(pick_n(rng, s, limit), rng, length=rng.randint(2, 8)), s


def bip_perm_stream(count: int, seed: int, limit: int = 15):
    """Bipartite permutation graphs; three in four are redrawn until they are
    connected with side sizes that admit integral star counts, so the
    dynamic program runs to the end."""
    rng = random.Random(seed)
    for _ in range(count):
        s = rng.choice((2, 3))
        want_counts = rng.random() < 0.75
        for _ in range(1000):
            b, order = random_bip_perm(rng.randint(s + 1, limit), rng)
            if not want_counts:
                break
            if star_counts(len(b.left), len(b.right), s) and len(b.to_graph().components()) == 1:
                break
        yield b, order, s


def cograph_stream(count: int, seed: int, limit: int = 15):
    rng = random.Random(seed)
    for _ in range(count):
        s = rng.choice((2, 3))
        n = pick_n(rng, s, limit)
        tree = random_cotree(list(range(n)), rng)
        yield evaluate(tree, n), tree, s


def split_stream(count: int, seed: int, limit: int = 15):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_split(pick_n(rng, 2, limit), rng)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def rebracket(node: CotreeNode, rng: random.Random) -> CotreeNode:
    """Same graph, different binarization: flatten same-kind chains and
    rebuild them in a random shape and order."""
    if node.kind == "leaf":
        return leaf(node.vertex)
    parts: list[CotreeNode] = []
    stack = [node]
    while stack:
        x = stack.pop()
        if x.kind == node.kind:
            stack.extend(x.children)
        else:
            parts.append(rebracket(x, rng))
    rng.shuffle(parts)
    while len(parts) > 1:
        i = rng.randrange(len(parts) - 1)
        a, b = parts[i], parts[i + 1]
        parts[i : i + 2] = [CotreeNode(node.kind, None, [a, b], a.size + b.size)]
    return parts[0]


def max_cover(g: Graph, centers: frozenset[int], others: tuple[int, ...], s: int) -> int:
    """Most vertices of ``others`` that can be assigned to adjacent centers,
    at most ``s`` per center (augmenting paths over center copies)."""
    load: dict[int, list[int]] = {c: [] for c in centers}

    def augment(v: int, seen: set[int]) -> bool:
        for c in g.adj[v]:
            if c not in load or c in seen:
                continue
            seen.add(c)
            if len(load[c]) < s:
                load[c].append(v)
                return True
            for j, w in enumerate(load[c]):
                if augment(w, seen):
                    load[c][j] = v
                    return True
        return False

    return sum(augment(v, set()) for v in others)


def join_bruteforce(g: Graph, left: list[int], right: list[int], c1: int, c2: int, s: int) -> int:
    """Exact best coverage inside ``G[left ∪ right]`` with exactly ``c1``
    centers in ``left`` and ``c2`` in ``right``; ``-1`` if impossible."""
    verts = sorted(left + right)
    sub_idx = {v: i for i, v in enumerate(verts)}
    sub = Graph(len(verts), [(sub_idx[u], sub_idx[v]) for u, v in g.edges if u in sub_idx and v in sub_idx])
    li = [sub_idx[v] for v in left]
    ri = [sub_idx[v] for v in right]
    return _join_brute(sub, tuple(li), tuple(ri), c1, c2, s)


@lru_cache(maxsize=None)
def _join_brute(sub: Graph, li: tuple[int, ...], ri: tuple[int, ...], c1: int, c2: int, s: int) -> int:
    if c1 > len(li) or c2 > len(ri):
        return -1
    bound = min((c1 + c2) * s, len(li) + len(ri) - c1 - c2)
    best = 0
    for a in combinations(li, c1):
        for b in combinations(ri, c2):
            cs = frozenset(a + b)
            others = tuple(v for v in range(sub.n) if v not in cs)
            best = max(best, max_cover(sub, cs, others, s))
            if best == bound:
                return best
    return best


def _x3c_canon(col: tuple[tuple[int, ...], ...], u: int) -> tuple:
    # a set system is fixed up to element renaming by the multiset of
    # per-element membership vectors; minimise over set orders
    return min(
        tuple(sorted(tuple(x in st for st in order) for x in range(u)))
        for order in permutations(col)
    )


def x3c_orbits(u: int, s: int, max_sets: int) -> list[tuple[tuple[int, ...], ...]]:
    """One collection per isomorphism class of X3C instances on ``u``
    elements with between ``u/s`` and ``max_sets`` distinct sets."""
    pool = list(combinations(range(u), s))
    level: dict[tuple, tuple] = {(): ()}
    out = []
    for k in range(1, max_sets + 1):
        nxt: dict[tuple, tuple] = {}
        for col in level.values():
            for t in pool:
                if t not in col:
                    c = col + (t,)
                    nxt.setdefault(_x3c_canon(c, u), c)
        level = nxt
        if k >= u // s:
            out.extend(level.values())
    return out
