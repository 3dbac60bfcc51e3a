"""Exhaustive search for star partitions of arbitrary graphs.

This is the ground truth the class-specific solvers are tested against, so
it deliberately shares nothing with them beyond the graph model.
"""

from __future__ import annotations

import os
from itertools import combinations

from .graph import Block, Graph, StarPartition

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """Raised when the search expands more nodes than its budget allows."""


def default_budget() -> int:
    env = os.environ.get("STARPART_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _components_divisible(mask: int, nbr_masks: list[int], size: int) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            v = frontier & -frontier
            frontier ^= v
            new = nbr_masks[v.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        if comp.bit_count() % size:
            return False
        rest &= ~comp
    return True


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def oracle_partition(g: Graph, s: int, budget: int | None = None) -> StarPartition | None:
    """Exact decision by branching on the smallest uncovered vertex ``v``.

    ``v`` is either a center together with ``s`` of its uncovered neighbors,
    or a leaf of an uncovered neighbor ``c`` together with ``s - 1`` more of
    ``c``'s uncovered neighbors.  Uncovered sets already proven infeasible are
    memoised.

    Returns a partition, or ``None`` when none exists.  Raises
    :class:`BudgetExceeded` after ``budget`` node expansions.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if budget is None:
        budget = default_budget()
    n = g.n
    size = s + 1
    nbr_masks = [0] * n
    for v in range(n):
        m = 0
        for w in g.adj[v]:
            m |= 1 << w
        nbr_masks[v] = m
    failed: set[int] = set()
    expansions = 0
    blocks: list[Block] = []

    def candidates(mask: int) -> list[tuple[int, tuple[int, ...]]]:
        low = mask & -mask
        v = low.bit_length() - 1
        out = []
        seen = set()
        v_nbrs = _bits(nbr_masks[v] & mask)
        for leaves in combinations(v_nbrs, s):
            key = (v, leaves)
            seen.add(frozenset((v, *leaves)))
            out.append(key)
        for c in v_nbrs:
            others = [w for w in _bits(nbr_masks[c] & mask) if w != v]
            for rest in combinations(others, s - 1):
                verts = frozenset((c, v, *rest))
                if verts in seen:
                    continue
                seen.add(verts)
                out.append((c, tuple(sorted((v, *rest)))))
        # lexicographic by vertex set, so C6 yields {0,1,2},{3,4,5}
        out.sort(key=lambda cl: sorted((cl[0], *cl[1])))
        return out

    def search(mask: int) -> bool:
        nonlocal expansions
        if mask == 0:
            return True
        if mask in failed:
            return False
        expansions += 1
        if expansions > budget:
            raise BudgetExceeded(f"oracle exceeded its budget of {budget} expansions")
        low = mask & -mask
        v = low.bit_length() - 1
        if not nbr_masks[v] & mask or not _components_divisible(mask, nbr_masks, size):
            failed.add(mask)
            return False
        for center, leaves in candidates(mask):
            bm = 1 << center
            for x in leaves:
                bm |= 1 << x
            blocks.append(Block(center, leaves))
            if search(mask & ~bm):
                return True
            blocks.pop()
        failed.add(mask)
        return False

    if search((1 << n) - 1):
        return StarPartition(s, tuple(blocks))
    return None


def oracle_decide(g: Graph, s: int, budget: int | None = None) -> bool:
    return oracle_partition(g, s, budget) is not None


def enumerate_partitions_decide(g: Graph, s: int) -> bool:
    """Independent second method: try every way to cut ``V`` into
    ``(s + 1)``-subsets and test each for a star.  Only for tiny ``n``."""
    n = g.n
    size = s + 1
    if n % size:
        return False

    def has_star(group: tuple[int, ...]) -> bool:
        return any(all(g.has_edge(c, x) for x in group if x != c) for c in group)

    def rec(remaining: tuple[int, ...]) -> bool:
        if not remaining:
            return True
        first, rest = remaining[0], remaining[1:]
        for others in combinations(rest, s):
            group = (first, *others)
            if has_star(group):
                left = tuple(x for x in rest if x not in others)
                if rec(left):
                    return True
        return False

    return rec(tuple(range(n)))
