"""Graph model, star-partition certificates and the partition verifier."""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

MATRIX_LIMIT = 10_000


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.  Neighbor
    lists are sorted; the boolean adjacency matrix is built on first use and
    only when ``n <= MATRIX_LIMIT``, otherwise edge queries bisect the
    neighbor lists.
    """

    __slots__ = ("n", "edges", "adj", "_matrix", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(n) for v in self.adj[u] if u < v
        )
        self._m = len(self.edges)
        self._matrix: np.ndarray | None = None

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            if self.n > MATRIX_LIMIT:
                raise ValueError("adjacency matrix disabled above MATRIX_LIMIT vertices")
            mat = np.zeros((self.n, self.n), dtype=bool)
            if self.edges:
                e = np.asarray(self.edges)
                mat[e[:, 0], e[:, 1]] = True
                mat[e[:, 1], e[:, 0]] = True
            self._matrix = mat
        return self._matrix

    def has_edge(self, u: int, v: int) -> bool:
        if self.n <= MATRIX_LIMIT:
            return bool(self.matrix[u, v])
        row = self.adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            stack = [root]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def subgraph(self, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..len(vertices)-1``.

        Returns the subgraph and the list mapping new ids back to old ids.
        """
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self.adj[u]
            if w in index and u < w
        ]
        return Graph(len(vertices), edges), list(vertices)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Copy of the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def complement(self) -> Graph:
        return Graph(
            self.n,
            [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)],
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Block:
    center: int
    leaves: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center, *self.leaves)


@dataclass(frozen=True)
class StarPartition:
    """Blocks of ``s + 1`` vertices, each with a designated center.

    The center label is a hint: the verifier accepts a block whenever
    some member is adjacent to all others.
    """

    s: int
    blocks: tuple[Block, ...] = field(default_factory=tuple)

    @classmethod
    def from_blocks(cls, s: int, blocks: Iterable[tuple[int, Iterable[int]]]) -> StarPartition:
        return cls(s, tuple(Block(c, tuple(leaves)) for c, leaves in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def vertex_sets(self) -> list[frozenset[int]]:
        return [frozenset(b.vertices) for b in self.blocks]

    def canonical(self) -> StarPartition:
        """Blocks sorted by their smallest vertex, leaves sorted."""
        blocks = sorted(
            (Block(b.center, tuple(sorted(b.leaves))) for b in self.blocks),
            key=lambda b: min(b.vertices),
        )
        return StarPartition(self.s, tuple(blocks))

    def relabel(self, mapping: Sequence[int]) -> StarPartition:
        return StarPartition(
            self.s,
            tuple(Block(mapping[b.center], tuple(mapping[x] for x in b.leaves)) for b in self.blocks),
        )


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with explicit sides; edges are ``(left, right)`` pairs.

    Vertex ids are global ids (typically those of an underlying ``Graph``).
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ls, rs = set(self.left), set(self.right)
        if ls & rs:
            raise ValueError("sides of a bipartite graph must be disjoint")
        for u, w in self.edges:
            if u not in ls or w not in rs:
                raise ValueError(f"edge ({u}, {w}) does not go from left to right")

    @classmethod
    def from_sides(cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
        """Left side ``0..n_left-1``; right index ``j`` becomes id ``n_left + j``."""
        return cls(
            tuple(range(n_left)),
            tuple(range(n_left, n_left + n_right)),
            tuple(sorted({(u, n_left + w) for u, w in edges})),
        )

    @property
    def n(self) -> int:
        return len(self.left) + len(self.right)

    def neighbors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in (*self.left, *self.right)}
        for u, w in self.edges:
            out[u].append(w)
            out[w].append(u)
        for lst in out.values():
            lst.sort()
        return out

    def to_graph(self) -> Graph:
        """Plain graph; requires the ids to be exactly ``0..n-1``."""
        ids = sorted((*self.left, *self.right))
        if ids != list(range(len(ids))):
            raise ValueError("vertex ids are not 0..n-1")
        return Graph(len(ids), self.edges)


@dataclass(frozen=True)
class Precheck:
    feasible: bool
    components: list[list[int]]
    reason: str = ""


def feasibility_precheck(g: Graph, s: int) -> Precheck:
    """Stars never cross components, so every component size must be a
    multiple of ``s + 1``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    comps = g.components()
    for comp in comps:
        if len(comp) % (s + 1):
            return Precheck(
                False, comps, f"component size {len(comp)} not divisible by {s + 1}"
            )
    return Precheck(True, comps)


def contains_star(g: Graph, subset: Iterable[int], s: int) -> int | None:
    """Smallest vertex of ``subset`` with at least ``s`` neighbors in ``subset``."""
    members = sorted(set(subset))
    inside = set(members)
    for v in members:
        if sum(1 for w in g.adj[v] if w in inside) >= s:
            return v
    return None


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    reason: str = ""
    block: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def verify_partition(g: Graph, s: int, p: StarPartition) -> VerifyReport:
    """Check that ``p`` is an ``s``-star partition of ``g``.

    Cover defects (overlap, missing or foreign vertices, wrong block size) are
    reported before star defects.  A block whose stored center fails is
    retried with every other member as center.
    """
    if p.s != s:
        return VerifyReport(False, f"partition is for s={p.s}, expected s={s}")
    seen: dict[int, int] = {}
    for i, b in enumerate(p.blocks):
        verts = b.vertices
        if len(verts) != s + 1:
            return VerifyReport(False, f"cover: block {i} has {len(verts)} vertices, expected {s + 1}", i)
        for v in verts:
            if not 0 <= v < g.n:
                return VerifyReport(False, f"cover: vertex {v} in block {i} is not in the graph", i)
            if v in seen:
                return VerifyReport(
                    False, f"cover: vertex {v} appears in blocks {seen[v]} and {i}", i
                )
            seen[v] = i
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen.keys())
        return VerifyReport(False, f"cover: vertex {missing} is not covered")
    for i, b in enumerate(p.blocks):
        if all(g.has_edge(b.center, x) for x in b.leaves):
            continue
        if contains_star(g, b.vertices, s) is None:
            names = ",".join(map(str, sorted(b.vertices)))
            return VerifyReport(False, f"block {i} {{{names}}} contains no {s}-star", i)
    return VerifyReport(True)


def normalize_centers(g: Graph, p: StarPartition) -> StarPartition:
    """Relabel every block's center to the smallest valid one."""
    blocks = []
    for b in p.blocks:
        c = contains_star(g, b.vertices, p.s)
        if c is None:
            raise ValueError(f"block {sorted(b.vertices)} contains no star")
        blocks.append(Block(c, tuple(sorted(x for x in b.vertices if x != c))))
    return StarPartition(p.s, tuple(blocks))
