"""P3-partitions of split graphs through degree-constrained factors.

A split graph ``G = (C ∪ I, E)`` has a P3-partition iff the bipartite graph
``B`` of its C-I edges has a *feasible factor*: every I-vertex keeps exactly
one edge, every C-vertex keeps at most two, and the C-vertices left with no
edge outnumber those with one edge by a multiple of three.  Such a factor is
found as a perfect matching of a gadget graph ``B*``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .graph import Block, Graph, StarPartition
from .matching import max_cardinality_matching
from .oracle import oracle_partition


class InstanceTooLarge(ValueError):
    """The exact search was refused because the instance exceeds the limit."""


DEFAULT_LIMIT = 40


@dataclass(frozen=True)
class SplitDecomposition:
    clique: tuple[int, ...]
    independent: tuple[int, ...]

    def is_valid_for(self, g: Graph) -> bool:
        c, i = self.clique, self.independent
        if sorted(c + i) != list(range(g.n)):
            return False
        if any(not g.has_edge(a, b) for x, a in enumerate(c) for b in c[x + 1 :]):
            return False
        iset = set(i)
        return not any(w in iset for v in i for w in g.adj[v])


def split_decompose(g: Graph) -> SplitDecomposition | None:
    """Clique/independent split via the degree sequence, or ``None``.

    Vertices are ranked by degree (descending, ties by id); the clique is
    the longest prefix whose ``j``-th vertex has degree at least ``j - 1``.
    Among valid splits this picks the largest clique.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    size = 0
    for j, v in enumerate(order):
        if g.degree(v) >= j:
            size = j + 1
        else:
            break
    sd = SplitDecomposition(tuple(sorted(order[:size])), tuple(sorted(order[size:])))
    return sd if sd.is_valid_for(g) else None


@dataclass(frozen=True)
class FeasibleFactor:
    """Edge subset of the C-I graph; ``degree`` covers every C- and I-vertex."""

    edges: tuple[tuple[int, int], ...]  # (clique vertex, independent vertex)
    degree: dict[int, int] = field(hash=False)

    def violations(self, sd: SplitDecomposition) -> list[str]:
        out = []
        for u in sd.independent:
            if self.degree.get(u, 0) != 1:
                out.append(f"independent vertex {u} has degree {self.degree.get(u, 0)}")
        counts = Counter(self.degree.get(v, 0) for v in sd.clique)
        if any(d > 2 for d in counts):
            out.append("a clique vertex has degree above 2")
        n0, n1 = counts[0], counts[1]
        if n0 < n1:
            out.append(f"{n0} degree-0 clique vertices but {n1} of degree 1")
        if (n0 - n1) % 3:
            out.append(f"degree-0 minus degree-1 count {n0 - n1} is not a multiple of 3")
        return out


@dataclass
class GadgetGraph:
    """``B*`` with the origin of every vertex.

    ``label[x]`` is one of ``("I", u)``, ``("V", v, e)`` with ``e`` the
    B'-edge as ``(v, w)`` where ``w`` is an I-vertex or ``"z"``,
    ``("V'", v, i)``, ``("Z", v)`` or ``("Z'", i)``.
    """

    graph: Graph
    label: list[tuple]
    q: int
    r: int
    bprime_degree: dict[int, int]


def build_bstar(sd: SplitDecomposition, g: Graph) -> GadgetGraph | None:
    """Construct ``B*``; ``None`` when ``3 ∤ n`` or ``|I| > 2|C|``."""
    C, I = sd.clique, sd.independent
    if g.n % 3 or len(I) > 2 * len(C):
        return None
    q, r = divmod((2 * len(C) - len(I)) // 3, 2)
    label: list[tuple] = []
    edges: list[tuple[int, int]] = []

    def add(lab: tuple) -> int:
        label.append(lab)
        return len(label) - 1

    u_node = {u: add(("I", u)) for u in I}
    z_node = {v: add(("Z", v)) for v in C}
    iset = set(I)
    bdeg = {}
    for v in C:
        inc = [w for w in g.adj[v] if w in iset] + ["z"]
        bdeg[v] = len(inc)
        ve = []
        for w in inc:
            x = add(("V", v, (v, w)))
            ve.append(x)
            edges.append((u_node[w] if w != "z" else z_node[v], x))
        vp = [add(("V'", v, i)) for i in range(1, len(inc) + 1)]
        edges.extend((a, b) for a in ve for b in vp)
        if len(vp) >= 2:
            edges.append((vp[0], vp[1]))
    zp = [add(("Z'", i)) for i in range(1, len(C) - r + 1)]
    edges.extend((z_node[v], b) for v in C for b in zp)
    edges.extend((zp[2 * i], zp[2 * i + 1]) for i in range(q))
    return GadgetGraph(Graph(len(label), edges), label, q, r, bdeg)


def project_matching(gg: GadgetGraph, mate: dict[int, int], sd: SplitDecomposition) -> tuple[FeasibleFactor, int]:
    """Factor of ``B`` kept by a perfect matching of ``B*``, plus the degree
    of ``z`` in the corresponding factor of ``B'``."""
    kept: list[tuple[int, int]] = []
    external: Counter[int] = Counter()
    z_degree = 0
    for x, lab in enumerate(gg.label):
        if lab[0] != "V":
            continue
        partner = gg.label[mate[x]]
        if partner[0] in ("I", "Z"):
            v, (_, w) = lab[1], lab[2]
            external[v] += 1
            if w == "z":
                z_degree += 1
            else:
                kept.append((v, w))
    for v in sd.clique:
        if external[v] not in (0, 2):
            raise AssertionError(f"clique vertex {v} has {external[v]} external matches")
    degree: Counter[int] = Counter()
    for v, w in kept:
        degree[v] += 1
        degree[w] += 1
    return FeasibleFactor(tuple(sorted(kept)), dict(degree)), z_degree


def assemble_blocks(sd: SplitDecomposition, factor: FeasibleFactor) -> StarPartition:
    partner: dict[int, list[int]] = {v: [] for v in sd.clique}
    for v, w in factor.edges:
        partner[v].append(w)
    free = [v for v in sd.clique if not partner[v]]
    blocks = []
    pos = 0
    for v in sd.clique:
        ws = partner[v]
        if len(ws) == 2:
            blocks.append(Block(v, tuple(sorted(ws))))
        elif len(ws) == 1:
            blocks.append(Block(v, tuple(sorted((ws[0], free[pos])))))
            pos += 1
    rest = free[pos:]
    for j in range(0, len(rest), 3):
        a, b, c = rest[j : j + 3]
        blocks.append(Block(a, (b, c)))
    return StarPartition(2, tuple(blocks)).canonical()


@dataclass(frozen=True)
class SplitResult:
    partition: StarPartition | None
    decomposition: SplitDecomposition
    gadget: GadgetGraph | None = None
    factor: FeasibleFactor | None = None
    z_degree: int | None = None


def p3_split_detailed(g: Graph, sd: SplitDecomposition | None = None) -> SplitResult:
    if sd is None:
        sd = split_decompose(g)
        if sd is None:
            raise ValueError("graph is not a split graph")
    gg = build_bstar(sd, g)
    if gg is None:
        return SplitResult(None, sd)
    mt = max_cardinality_matching(gg.graph)
    if not mt.is_perfect:
        return SplitResult(None, sd, gg)
    factor, zdeg = project_matching(gg, mt.mate(), sd)
    bad = factor.violations(sd)
    if bad or zdeg % 2 != gg.r or zdeg > 2 * gg.q + gg.r:
        raise AssertionError("projected factor is infeasible: " + "; ".join(bad or ["z degree"]))
    return SplitResult(assemble_blocks(sd, factor), sd, gg, factor, zdeg)


def p3_split(g: Graph) -> StarPartition | None:
    """P3-partition of a split graph, or ``None`` if none exists."""
    return p3_split_detailed(g).partition


def star_split(g: Graph, s: int, limit: int = DEFAULT_LIMIT, budget: int | None = None) -> StarPartition | None:
    """Exact search for ``s >= 3``, where the problem is NP-hard."""
    if s < 3:
        raise ValueError("star_split handles s >= 3 only")
    if g.n > limit:
        raise InstanceTooLarge(
            f"split graphs with s >= 3 are NP-hard; n={g.n} exceeds the exact-search limit {limit}"
        )
    return oracle_partition(g, s, budget)


def split_partition(g: Graph, s: int, limit: int = DEFAULT_LIMIT, budget: int | None = None) -> StarPartition | None:
    if split_decompose(g) is None:
        raise ValueError("graph is not a split graph")
    if s == 2:
        return p3_split(g)
    if s == 1:
        mt = max_cardinality_matching(g)
        return StarPartition(1, tuple(Block(a, (b,)) for a, b in mt.pairs)) if mt.is_perfect else None
    return star_split(g, s, limit, budget)
