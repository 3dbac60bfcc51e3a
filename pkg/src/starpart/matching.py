"""Maximum matchings: Hopcroft-Karp on bipartite graphs and Edmonds' blossom
algorithm on general graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import BipartiteGraph, Graph

INF = float("inf")


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    is_perfect: bool

    def __len__(self) -> int:
        return len(self.pairs)

    def mate(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out


def max_bipartite_matching(b: BipartiteGraph) -> Matching:
    """Hopcroft-Karp, O(q sqrt(p)) for p vertices and q edges.

    Neighbors are scanned in increasing id order so the result is
    deterministic.
    """
    nbrs: dict[int, list[int]] = {u: [] for u in b.left}
    for u, w in b.edges:
        nbrs[u].append(w)
    for lst in nbrs.values():
        lst.sort()
    left = sorted(b.left)
    pair_l: dict[int, int | None] = {u: None for u in left}
    pair_r: dict[int, int | None] = {w: None for w in b.right}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if pair_l[u] is None:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for w in nbrs[u]:
                nu = pair_r[w]
                if nu is None:
                    found = True
                elif dist[nu] == INF:
                    dist[nu] = dist[u] + 1
                    q.append(nu)
        return found

    def dfs(root: int) -> bool:
        # iterative layered DFS; recursion would overflow on long paths
        stack = [(root, iter(nbrs[root]))]
        path: list[tuple[int, int]] = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                nu = pair_r[w]
                if nu is None:
                    path.append((u, w))
                    for pu, pw in path:
                        pair_l[pu] = pw
                        pair_r[pw] = pu
                    return True
                if dist[nu] == dist[u] + 1:
                    path.append((u, w))
                    stack.append((nu, iter(nbrs[nu])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in left:
            if pair_l[u] is None:
                dfs(u)

    pairs = tuple(sorted((u, w) for u, w in pair_l.items() if w is not None))
    return Matching(pairs, 2 * len(pairs) == b.n)


def max_cardinality_matching(g: Graph) -> Matching:
    """Edmonds' blossom algorithm (BFS formulation), O(n^3)."""
    n = g.n
    adj = g.adj
    mate = [-1] * n

    def find_free(root: int, parent: list[int]) -> int:
        base = list(range(n))
        used = [False] * n
        used[root] = True
        q = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to
                    used[mate[to]] = True
                    q.append(mate[to])
        return -1

    # greedy warm start
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    for root in range(n):
        if mate[root] != -1:
            continue
        parent = [-1] * n
        v = find_free(root, parent)
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt

    pairs = tuple(sorted((v, mate[v]) for v in range(n) if mate[v] > v))
    return Matching(pairs, 2 * len(pairs) == n)
