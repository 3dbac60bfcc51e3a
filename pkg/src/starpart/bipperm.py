"""Star partitions of bipartite permutation graphs (s >= 2).

Given a strong ordering of both sides, a partition can be assumed to be built
left to right from three kinds of pieces: a star centered in W, a star
centered in U, or a pair of interleaving stars.  ``T[x][y]`` records whether
the first ``x + s*y`` vertices of U and ``y + s*x`` vertices of W can be
covered by ``x`` U-centered and ``y`` W-centered stars.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteGraph, Block, StarPartition


@dataclass(frozen=True)
class StrongOrdering:
    u_order: tuple[int, ...]
    w_order: tuple[int, ...]


def _check_cover(g: BipartiteGraph, ord: StrongOrdering) -> None:
    if sorted(ord.u_order) != sorted(g.left) or sorted(ord.w_order) != sorted(g.right):
        raise ValueError("ordering does not cover the two sides of the graph")


def validate_strong_ordering(g: BipartiteGraph, ord: StrongOrdering) -> bool:
    """For every two edges {u,w}, {u',w'} with u before u' and w' before w,
    both {u,w'} and {u',w} must be edges.  Checks all O(m^2) edge pairs."""
    _check_cover(g, ord)
    if not g.edges:
        return True
    ur = {u: i for i, u in enumerate(ord.u_order)}
    wr = {w: i for i, w in enumerate(ord.w_order)}
    e = np.array([(ur[u], wr[w]) for u, w in g.edges], dtype=np.int64)
    adj = np.zeros((len(ur), len(wr)), dtype=bool)
    adj[e[:, 0], e[:, 1]] = True
    for u, w in e:
        # edges (u', w') with u < u' and w' < w
        mask = (e[:, 0] > u) & (e[:, 1] < w)
        if not mask.any():
            continue
        up, wp = e[mask, 0], e[mask, 1]
        if not (adj[u, wp].all() and adj[up, w].all()):
            return False
    return True


def _refine(nbrs: dict[int, list[int]], u_side: list[int], w_side: list[int],
            w_rank: dict[int, float]) -> tuple[list[int], list[int]]:
    u_rank: dict[int, float] = {}
    for _ in range(2 * (len(u_side) + len(w_side)) + 2):
        u_new = sorted(
            u_side,
            key=lambda u: (min((w_rank[w] for w in nbrs[u]), default=0),
                           max((w_rank[w] for w in nbrs[u]), default=0), u_rank.get(u, 0), u),
        )
        u_rank = {u: i for i, u in enumerate(u_new)}
        w_new = sorted(
            w_side,
            key=lambda w: (min((u_rank[u] for u in nbrs[w]), default=0),
                           max((u_rank[u] for u in nbrs[w]), default=0), w_rank[w], w),
        )
        new_rank = {w: i for i, w in enumerate(w_new)}
        if new_rank == w_rank:
            return u_new, w_new
        w_rank = new_rank
    return u_new, w_new


def compute_strong_ordering(g: BipartiteGraph, max_starts: int = 8) -> StrongOrdering | None:
    """Heuristic strong ordering, always checked by the exact validator.

    Components are laid out one after another.  Inside a component, BFS
    distances from a peripheral start vertex seed the order of both sides,
    which is then refined by sorting each side on (leftmost neighbor,
    rightmost neighbor) until nothing moves.  Several start vertices are
    tried; ``None`` means no attempt produced a valid ordering.
    """
    nbrs = g.neighbors()
    left = set(g.left)
    seen: set[int] = set()
    comps = []
    for v in sorted(nbrs):
        if v in seen:
            continue
        comp = _bfs_order(nbrs, v)
        seen.update(comp)
        comps.append(comp)
    u_all: list[int] = []
    w_all: list[int] = []
    for comp in comps:
        found = None
        for start in _start_candidates(nbrs, comp, max_starts):
            dist = {v: i for i, v in enumerate(_bfs_order(nbrs, start))}
            u_side = [v for v in comp if v in left]
            w_side = [v for v in comp if v not in left]
            w_rank = {w: float(dist[w]) for w in w_side}
            u_ord, w_ord = _refine(nbrs, u_side, w_side, w_rank)
            sub = BipartiteGraph(
                tuple(u_side), tuple(w_side),
                tuple((u, w) for u, w in g.edges if u in dist),
            )
            cand = StrongOrdering(tuple(u_ord), tuple(w_ord))
            if validate_strong_ordering(sub, cand):
                found = cand
                break
        if found is None:
            return None
        u_all.extend(found.u_order)
        w_all.extend(found.w_order)
    return StrongOrdering(tuple(u_all), tuple(w_all))


def _bfs_order(nbrs: dict[int, list[int]], root: int) -> list[int]:
    order = [root]
    seen = {root}
    q = deque([root])
    while q:
        v = q.popleft()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                q.append(w)
    return order


def _start_candidates(nbrs: dict[int, list[int]], comp: list[int], limit: int) -> list[int]:
    # the last vertex reached by a BFS is peripheral; a second BFS from it
    # gives a vertex at the other end
    far = _bfs_order(nbrs, comp[0])[-1]
    other = _bfs_order(nbrs, far)[-1]
    out = [far, other]
    by_degree = sorted(comp, key=lambda v: (len(nbrs[v]), v))
    for v in by_degree:
        if len(out) >= limit:
            break
        if v not in out:
            out.append(v)
    return out


def star_counts(n_u: int, n_w: int, s: int) -> tuple[int, int] | None:
    """Number of U-centered and W-centered stars forced by the side sizes.

    Every star takes one center and ``s`` leaves from the other side, so
    ``|U| = k_U + s*k_W`` and ``|W| = k_W + s*k_U``.
    """
    if s < 2:
        raise ValueError("star counts are only determined for s >= 2")
    den = s * s - 1
    num_u = s * n_w - n_u
    num_w = s * n_u - n_w
    if num_u < 0 or num_w < 0 or num_u % den or num_w % den:
        return None
    return num_u // den, num_w // den


@dataclass
class DPTable:
    """``T`` is the boolean grid; ``back`` holds the move that set each true
    cell: ``"base"``, ``"a"`` (W-centered star), ``"b"`` (U-centered star)
    or ``"c"`` (interleaving pair)."""

    T: np.ndarray
    back: list[list[str | None]]
    s: int


class _Windows:
    """O(1) star tests on windows of consecutive vertices via prefix sums."""

    def __init__(self, adj: np.ndarray):
        self.adj = adj
        # row_pre[u, j] = #W-neighbors of u among the first j W-vertices
        self.row_pre = np.zeros((adj.shape[0], adj.shape[1] + 1), dtype=np.int32)
        np.cumsum(adj, axis=1, out=self.row_pre[:, 1:])
        self.col_pre = np.zeros((adj.shape[1], adj.shape[0] + 1), dtype=np.int32)
        np.cumsum(adj.T, axis=1, out=self.col_pre[:, 1:])
        self.row_pre = self.row_pre.tolist()
        self.col_pre = self.col_pre.tolist()
        self.adjl = adj.tolist()

    def w_star(self, w: int, u0: int, u1: int) -> bool:
        """W-vertex ``w`` adjacent to all U-vertices in ``[u0, u1)``."""
        row = self.col_pre[w]
        return row[u1] - row[u0] == u1 - u0

    def u_star(self, u: int, w0: int, w1: int) -> bool:
        row = self.row_pre[u]
        return row[w1] - row[w0] == w1 - w0

    def pair(self, u0: int, w0: int, size: int) -> tuple[int, int] | None:
        """Centers ``(cu, cw)`` splitting the windows ``[u0, u0+size)`` and
        ``[w0, w0+size)`` into two disjoint stars.  Interleaving pairs
        (both centers strictly inside the windows) are preferred."""
        need = size - 1
        fallback = None
        for cu in range(u0, u0 + size):
            rcu = self.row_pre[cu]
            cu_cnt = rcu[w0 + size] - rcu[w0]
            if cu_cnt < need:
                continue
            arow = self.adjl[cu]
            for cw in range(w0, w0 + size):
                a = arow[cw]
                if cu_cnt - a != need:
                    continue
                rcw = self.col_pre[cw]
                if rcw[u0 + size] - rcw[u0] - a != need:
                    continue
                if u0 < cu < u0 + size - 1 and w0 < cw < w0 + size - 1:
                    return cu, cw
                if fallback is None:
                    fallback = (cu, cw)
        return fallback


def fill_table(adj: np.ndarray, s: int, k_u: int, k_w: int) -> DPTable:
    """Fill ``T`` over positions in the strong ordering.

    ``adj[i, j]`` tells whether the ``i``-th U-vertex and ``j``-th W-vertex
    are adjacent.  ``T[0, 0]`` is true; every move is applied wherever its
    source cell exists, which also covers the border rows and columns.
    """
    win = _Windows(adj)
    T = np.zeros((k_u + 1, k_w + 1), dtype=bool)
    back: list[list[str | None]] = [[None] * (k_w + 1) for _ in range(k_u + 1)]
    T[0, 0] = True
    back[0][0] = "base"
    Tl = [[False] * (k_w + 1) for _ in range(k_u + 1)]
    Tl[0][0] = True
    for x in range(k_u + 1):
        for y in range(k_w + 1):
            if x == 0 and y == 0:
                continue
            # (a) W-centered star on top of T[x][y-1]
            if y >= 1 and Tl[x][y - 1]:
                u0 = x + s * (y - 1)
                if win.w_star((y - 1) + s * x, u0, u0 + s):
                    Tl[x][y] = True
                    back[x][y] = "a"
                    continue
            # (b) U-centered star on top of T[x-1][y]
            if x >= 1 and Tl[x - 1][y]:
                w0 = y + s * (x - 1)
                if win.u_star((x - 1) + s * y, w0, w0 + s):
                    Tl[x][y] = True
                    back[x][y] = "b"
                    continue
            # (c) interleaving pair on top of T[x-1][y-1]
            if x >= 1 and y >= 1 and Tl[x - 1][y - 1]:
                u0 = (x - 1) + s * (y - 1)
                w0 = (y - 1) + s * (x - 1)
                if win.pair(u0, w0, s + 1) is not None:
                    Tl[x][y] = True
                    back[x][y] = "c"
    T[:, :] = np.array(Tl, dtype=bool)
    return DPTable(T, back, s)


def _component_partition(g: BipartiteGraph, ord: StrongOrdering, s: int) -> list[Block] | None:
    counts = star_counts(len(ord.u_order), len(ord.w_order), s)
    if counts is None:
        return None
    k_u, k_w = counts
    u_ord, w_ord = ord.u_order, ord.w_order
    ur = {u: i for i, u in enumerate(u_ord)}
    wr = {w: i for i, w in enumerate(w_ord)}
    adj = np.zeros((len(u_ord), len(w_ord)), dtype=bool)
    for u, w in g.edges:
        if u in ur:
            adj[ur[u], wr[w]] = True
    table = fill_table(adj, s, k_u, k_w)
    if not table.T[k_u, k_w]:
        return None
    win = _Windows(adj)
    blocks: list[Block] = []
    x, y = k_u, k_w
    while (x, y) != (0, 0):
        move = table.back[x][y]
        if move == "a":
            u0 = x + s * (y - 1)
            c = w_ord[(y - 1) + s * x]
            blocks.append(Block(c, tuple(u_ord[u0 : u0 + s])))
            y -= 1
        elif move == "b":
            w0 = y + s * (x - 1)
            c = u_ord[(x - 1) + s * y]
            blocks.append(Block(c, tuple(w_ord[w0 : w0 + s])))
            x -= 1
        elif move == "c":
            u0 = (x - 1) + s * (y - 1)
            w0 = (y - 1) + s * (x - 1)
            cu, cw = win.pair(u0, w0, s + 1)
            blocks.append(Block(u_ord[cu], tuple(w_ord[j] for j in range(w0, w0 + s + 1) if j != cw)))
            blocks.append(Block(w_ord[cw], tuple(u_ord[i] for i in range(u0, u0 + s + 1) if i != cu)))
            x -= 1
            y -= 1
        else:
            raise AssertionError(f"true cell ({x}, {y}) without a move")
    blocks.reverse()
    return blocks


def bipperm_partition(g: BipartiteGraph, ord: StrongOrdering, s: int) -> StarPartition | None:
    """Star partition of a bipartite permutation graph for ``s >= 2``.

    ``ord`` must be a strong ordering of ``g``.  Each connected component is
    solved separately with the ordering restricted to it.
    """
    if s < 2:
        raise ValueError("the dynamic program needs s >= 2; use matching for s = 1")
    _check_cover(g, ord)
    nbrs = g.neighbors()
    seen: set[int] = set()
    blocks: list[Block] = []
    for v in sorted(nbrs):
        if v in seen:
            continue
        comp = set(_bfs_order(nbrs, v))
        seen |= comp
        if len(comp) % (s + 1):
            return None
        sub_ord = StrongOrdering(
            tuple(u for u in ord.u_order if u in comp),
            tuple(w for w in ord.w_order if w in comp),
        )
        part = _component_partition(g, sub_ord, s)
        if part is None:
            return None
        blocks.extend(part)
    return StarPartition(s, tuple(blocks))


def interleaving(block_u: Block, block_w: Block, u_rank: dict[int, int], w_rank: dict[int, int]) -> bool:
    """Each center lies within the other star's scope (range of its leaves)."""
    lu = [w_rank[x] for x in block_u.leaves]
    lw = [u_rank[x] for x in block_w.leaves]
    return min(lw) <= u_rank[block_u.center] <= max(lw) and min(lu) <= w_rank[block_w.center] <= max(lu)
