"""Star partitions of cographs by dynamic programming over the cotree.

``L[x][c]`` is the largest number of non-center vertices of the subtree at
``x`` that can be covered by the subtree's own centers when exactly ``c`` of
its vertices are centers.  The instance is a yes-instance iff
``L[root][k] == k*s`` for ``k = n/(s+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Block, Graph, StarPartition

NEG = float("-inf")
UNION, JOIN, LEAF = "union", "join", "leaf"


@dataclass(eq=False)
class CotreeNode:
    kind: str
    vertex: int | None = None
    children: list[CotreeNode] = field(default_factory=list)
    size: int = 1

    def leaves(self) -> list[int]:
        out = []
        stack = [self]
        while stack:
            node = stack.pop()
            if node.kind == LEAF:
                out.append(node.vertex)
            else:
                stack.extend(node.children)
        return sorted(out)

    def postorder(self) -> list[CotreeNode]:
        out = []
        stack = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done or node.kind == LEAF:
                out.append(node)
                continue
            stack.append((node, True))
            for ch in reversed(node.children):
                stack.append((ch, False))
        return out

    def sexpr(self) -> str:
        if self.kind == LEAF:
            return str(self.vertex)
        return f"({self.kind} {' '.join(ch.sexpr() for ch in self.children)})"


def leaf(v: int) -> CotreeNode:
    return CotreeNode(LEAF, v)


def combine(kind: str, parts: list[CotreeNode]) -> CotreeNode:
    """Left-deep binary chain of ``kind`` nodes over ``parts``."""
    node = parts[0]
    for p in parts[1:]:
        node = CotreeNode(kind, None, [node, p], node.size + p.size)
    return node


def evaluate(root: CotreeNode, n: int | None = None) -> Graph:
    """Graph obtained by disjoint unions and joins along the tree."""
    edges = []
    for node in root.postorder():
        if node.kind == JOIN:
            a, b = node.children
            la, lb = a.leaves(), b.leaves()
            edges.extend((u, v) for u in la for v in lb)
    if n is None:
        n = max(root.leaves()) + 1
    return Graph(n, edges)


def _split(g: Graph, verts: list[int], complement: bool) -> list[list[int]]:
    vset = set(verts)
    seen: set[int] = set()
    parts = []
    for r in verts:
        if r in seen:
            continue
        seen.add(r)
        comp = [r]
        stack = [r]
        while stack:
            v = stack.pop()
            if complement:
                nb = vset - set(g.adj[v]) - {v}
            else:
                nb = (w for w in g.adj[v] if w in vset)
            for w in nb:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        parts.append(sorted(comp))
    parts.sort()
    return parts


def build_cotree(g: Graph) -> CotreeNode | None:
    """Cotree by recursive splitting into components and co-components.

    Returns ``None`` when some induced subgraph on two or more vertices is
    connected with a connected complement, i.e. ``g`` is not a cograph.
    """
    if g.n == 0:
        return None
    # explicit stack: (vertex set, slot to fill)
    root_holder: list[CotreeNode] = []
    pending = [(list(range(g.n)), None)]
    built: dict[int, CotreeNode] = {}
    order = []
    while pending:
        verts, parent_key = pending.pop()
        key = len(order)
        order.append((verts, parent_key))
        if len(verts) == 1:
            built[key] = leaf(verts[0])
            continue
        parts = _split(g, verts, complement=False)
        kind = UNION
        if len(parts) == 1:
            parts = _split(g, verts, complement=True)
            kind = JOIN
            if len(parts) == 1:
                return None
        built[key] = CotreeNode(kind)
        for p in parts:
            pending.append((p, key))
    # attach children in the order their parts were generated (sorted)
    kids: dict[int, list[tuple[list[int], CotreeNode]]] = {}
    for key in range(len(order) - 1, -1, -1):
        verts, parent_key = order[key]
        node = built[key]
        if node.kind != LEAF:
            parts = sorted(kids.pop(key), key=lambda t: t[0])
            chain = combine(node.kind, [p for _, p in parts])
            node = chain
        if parent_key is None:
            root_holder.append(node)
        else:
            kids.setdefault(parent_key, []).append((verts, node))
    return root_holder[0]


def join_cell(c1: int, c2: int, size1: int, size2: int, own1: float, own2: float, s: int) -> tuple[float, int]:
    """Value of a join for a center split ``(c1, c2)`` and which case applied.

    ``own_i`` is the child's table entry ``L[x_i][c_i]``.  Centers of one
    side may cover any non-center of the other side; in the lopsided case the
    surplus capacity of the richer side can additionally cover its own
    non-centers, bounded by its spare capacity, by the non-centers the other
    side left uncovered, and by ``own_i``.
    """
    if own1 == NEG or own2 == NEG:
        return NEG, 0
    l1, l2 = size1 - c1, size2 - c2
    cap1, cap2 = c1 * s, c2 * s
    if cap1 > l2 and cap2 > l1:
        return l1 + l2, 1
    if cap1 <= l2 and cap2 <= l1:
        return cap1 + cap2, 2
    if cap1 > l2:
        return cap2 + l2 + min(cap1 - l2, l1 - cap2, own1), 3
    return cap1 + l1 + min(cap2 - l1, l2 - cap1, own2), 3


@dataclass
class CoverTable:
    """Per-node DP rows plus the split that realised each finite entry."""

    L: dict[int, list[float]]
    choice: dict[int, list[tuple[int, int] | None]]
    k: int
    s: int


def fill_cover_table(root: CotreeNode, s: int, k: int) -> CoverTable:
    L: dict[int, list[float]] = {}
    choice: dict[int, list[tuple[int, int] | None]] = {}
    for node in root.postorder():
        nid = id(node)
        row = [NEG] * (k + 1)
        pick: list[tuple[int, int] | None] = [None] * (k + 1)
        if node.kind == LEAF:
            row[0] = 0
            if k >= 1:
                row[1] = 0
        else:
            a, b = node.children
            ra, rb = L[id(a)], L[id(b)]
            for c1 in range(min(k, a.size) + 1):
                if ra[c1] == NEG:
                    continue
                for c2 in range(min(k - c1, b.size) + 1):
                    if rb[c2] == NEG:
                        continue
                    if node.kind == UNION:
                        val = ra[c1] + rb[c2]
                    else:
                        val, _ = join_cell(c1, c2, a.size, b.size, ra[c1], rb[c2], s)
                    if val > row[c1 + c2]:
                        row[c1 + c2] = val
                        pick[c1 + c2] = (c1, c2)
        L[nid] = row
        choice[nid] = pick
    return CoverTable(L, choice, k, s)


@dataclass
class _Cover:
    centers: dict[int, list[int]]  # center -> covered leaves
    free: list[int]  # non-centers not yet covered

    def covered(self) -> int:
        return sum(len(v) for v in self.centers.values())


def _fill(centers: dict[int, list[int]], targets: list[int], s: int) -> None:
    """Hand ``targets`` to centers with spare capacity, smallest ids first."""
    it = iter(targets)
    for c in sorted(centers):
        while len(centers[c]) < s:
            t = next(it, None)
            if t is None:
                return
            centers[c].append(t)
    if next(it, None) is not None:
        raise AssertionError("not enough capacity to cover the requested leaves")


def _reconstruct(root: CotreeNode, table: CoverTable) -> _Cover:
    s = table.s
    # iterative: first decide (node, c) top-down, then build bottom-up
    need: dict[int, int] = {id(root): table.k}
    nodes = root.postorder()
    for node in reversed(nodes):
        if node.kind == LEAF:
            continue
        c1, c2 = table.choice[id(node)][need[id(node)]]
        need[id(node.children[0])] = c1
        need[id(node.children[1])] = c2
    result: dict[int, _Cover] = {}
    for node in nodes:
        c = need[id(node)]
        if node.kind == LEAF:
            result[id(node)] = _Cover({node.vertex: []}, []) if c == 1 else _Cover({}, [node.vertex])
            continue
        a, b = node.children
        ca, cb = result.pop(id(a)), result.pop(id(b))
        if node.kind == UNION:
            result[id(node)] = _Cover({**ca.centers, **cb.centers}, sorted(ca.free + cb.free))
            continue
        c1, c2 = need[id(a)], need[id(b)]
        nonc1 = sorted(ca.free + [x for v in ca.centers.values() for x in v])
        nonc2 = sorted(cb.free + [x for v in cb.centers.values() for x in v])
        l1, l2 = len(nonc1), len(nonc2)
        cap1, cap2 = c1 * s, c2 * s
        _, case = join_cell(c1, c2, a.size, b.size, table.L[id(a)][c1], table.L[id(b)][c2], s)
        if case == 3 and cap2 > l1:
            # mirror so that side 1 is the one with surplus capacity
            ca, cb = cb, ca
            c1, c2, cap1, cap2 = c2, c1, cap2, cap1
            nonc1, nonc2, l1, l2 = nonc2, nonc1, l2, l1
        if case in (1, 2):
            cen1 = {v: [] for v in ca.centers}
            cen2 = {v: [] for v in cb.centers}
            take2 = nonc2[: min(cap1, l2)]
            take1 = nonc1[: min(cap2, l1)]
            _fill(cen1, take2, s)
            _fill(cen2, take1, s)
            free = sorted(set(nonc1) - set(take1)) + sorted(set(nonc2) - set(take2))
        else:
            own = min(cap1 - l2, l1 - cap2, ca.covered())
            cen1 = {v: [] for v in ca.centers}
            kept = 0
            for v in sorted(ca.centers):
                for x in ca.centers[v]:
                    if kept < own:
                        cen1[v].append(x)
                        kept += 1
            internal = {x for v in cen1.values() for x in v}
            rest1 = [x for x in nonc1 if x not in internal]
            cen2 = {v: [] for v in cb.centers}
            take1 = rest1[:cap2]
            _fill(cen2, take1, s)
            _fill(cen1, nonc2, s)
            free = sorted(set(rest1) - set(take1))
        result[id(node)] = _Cover({**cen1, **cen2}, free)
    return result[id(root)]


def cograph_partition(g: Graph, s: int, cotree: CotreeNode | None = None) -> StarPartition | None:
    """Star partition of a cograph, or ``None`` if there is none.

    Raises ``ValueError`` when ``g`` is not a cograph.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if cotree is None:
        cotree = build_cotree(g)
        if cotree is None:
            raise ValueError("graph is not a cograph (it has an induced P4)")
    if any(len(c) % (s + 1) for c in g.components()):
        return None
    k = g.n // (s + 1)
    table = fill_cover_table(cotree, s, k)
    if table.L[id(cotree)][k] != k * s:
        return None
    cover = _reconstruct(cotree, table)
    if cover.free or len(cover.centers) != k:
        raise AssertionError("reconstruction disagrees with the table")
    blocks = [Block(c, tuple(sorted(ls))) for c, ls in sorted(cover.centers.items())]
    return StarPartition(s, tuple(blocks))
