"""Reduction images of hard problems and seeded random instances per class."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .bipperm import StrongOrdering
from .cograph import JOIN, UNION, CotreeNode, evaluate, leaf
from .graph import BipartiteGraph, Graph
from .interval import IntervalRepresentation


class MalformedInstance(ValueError):
    pass


@dataclass(frozen=True)
class X3CInstance:
    universe: tuple[str, ...]
    sets: tuple[tuple[str, ...], ...]
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise MalformedInstance("set size must be positive")
        if len(set(self.universe)) != len(self.universe):
            raise MalformedInstance("universe has repeated elements")
        if len(self.universe) % self.s:
            raise MalformedInstance(f"|U|={len(self.universe)} is not a multiple of s={self.s}")
        known = set(self.universe)
        for st in self.sets:
            if len(set(st)) != self.s or len(st) != self.s:
                raise MalformedInstance(f"set {list(st)} does not have exactly {self.s} elements")
            missing = [x for x in st if x not in known]
            if missing:
                raise MalformedInstance(f"set {list(st)} uses {missing[0]!r}, which is not in U")
        if len(self.sets) < len(self.universe) // self.s:
            raise MalformedInstance("fewer sets than needed to cover U")


@dataclass(frozen=True)
class TDMInstance:
    """Element ``i`` of each of R, B, Y is ``0 <= i < q``; triples are
    ``(r, b, y)`` index tuples."""

    q: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.q < 0:
            raise MalformedInstance("q must be non-negative")
        for t in self.triples:
            if len(t) != 3 or not all(0 <= x < self.q for x in t):
                raise MalformedInstance(f"triple {t} references an element outside 0..{self.q - 1}")


def x3c_to_split(inst: X3CInstance, s: int | None = None) -> tuple[Graph, list[str]]:
    """Split graph that has an ``s``-star partition iff ``inst`` has an
    exact cover.

    Vertex order: set vertices, then the clique dummies, then element
    vertices, then the independent dummies.
    """
    s = inst.s if s is None else s
    if s != inst.s:
        raise MalformedInstance(f"instance has sets of size {inst.s}, asked for s={s}")
    if s < 2:
        raise MalformedInstance("the reduction needs s >= 2")
    n_cover = len(inst.universe) // s
    m = len(inst.sets)
    q, r = divmod(m - n_cover, s - 1)
    names: list[str] = []
    set_v = list(range(m))
    names += ["set:" + ",".join(st) for st in inst.sets]
    cdum = list(range(m, m + q))
    names += [f"dummy-C:{i}" for i in range(q)]
    last = m + q
    names.append(f"dummy-C:{q}")
    base = last + 1
    elem = {x: base + i for i, x in enumerate(inst.universe)}
    names += ["elem:" + x for x in inst.universe]
    base += len(inst.universe)
    idum = list(range(base, base + q))
    names += [f"dummy-I:{i}" for i in range(q)]
    base += q
    tail = list(range(base, base + s - r))
    names += [f"dummy-I:{q + i}" for i in range(s - r)]
    clique = set_v + cdum + [last]
    edges = list(combinations(clique, 2))
    for v, st in zip(set_v, inst.sets):
        edges.extend((v, elem[x]) for x in st)
    edges.extend(zip(cdum, idum))
    edges.extend((last, t) for t in tail)
    return Graph(len(names), edges), names


def x3c_brute_force(inst: X3CInstance) -> bool:
    need = len(inst.universe) // inst.s
    target = frozenset(inst.universe)
    for pick in combinations(inst.sets, need):
        if frozenset(x for st in pick for x in st) == target:
            return True
    return need == 0


def tdm_to_chordal(inst: TDMInstance) -> tuple[Graph, list[str]]:
    """Chordal graph with a P3-partition iff ``inst`` has a perfect
    3-dimensional matching.

    Element vertices ``u_a`` are ``0..3q-1`` (R, then B, then Y), their
    pendants follow, then three vertices per triple in the order r, b, y.
    """
    q = inst.q
    sides = "RBY"
    names = [f"u:{sides[i // q]}{i % q}" for i in range(3 * q)]
    names += [f"u':{sides[i // q]}{i % q}" for i in range(3 * q)]
    edges = [(i, 3 * q + i) for i in range(3 * q)]
    edges.extend(combinations(range(3 * q), 2))
    for j, (r, b, y) in enumerate(inst.triples):
        vr, vb, vy = 6 * q + 3 * j, 6 * q + 3 * j + 1, 6 * q + 3 * j + 2
        names += [f"v{j}:r", f"v{j}:b", f"v{j}:y"]
        ur, ub, uy = r, q + b, 2 * q + y
        edges += [(vr, vb), (vb, vy), (ur, vr), (ub, vb), (uy, vy), (vb, ur), (vb, uy)]
    return Graph(len(names), edges), names


def tdm_brute_force(inst: TDMInstance) -> bool:
    q = inst.q
    for pick in combinations(inst.triples, q):
        if all(len({t[d] for t in pick}) == q for d in range(3)):
            return True
    return False


def subdivide_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Replace ``e = {v, w}`` by the path ``v, n, n+1, n+2, w``."""
    v, w = e
    if not (0 <= v < g.n and 0 <= w < g.n) or not g.has_edge(v, w):
        raise ValueError(f"edge {e} is not in the graph")
    a, b, c = g.n, g.n + 1, g.n + 2
    key = (min(v, w), max(v, w))
    edges = [f for f in g.edges if f != key]
    edges += [(v, a), (a, b), (b, c), (c, w)]
    return Graph(g.n + 3, edges)


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search, then check the reverse visit order is a
    perfect elimination ordering."""
    n = g.n
    weight = [0] * n
    numbered = [False] * n
    visit: list[int] = []
    buckets: list[set[int]] = [set(range(n))]
    top = 0
    for _ in range(n):
        while top >= 0 and not buckets[top]:
            top -= 1
        v = min(buckets[top])
        buckets[top].discard(v)
        numbered[v] = True
        visit.append(v)
        for w in g.adj[v]:
            if not numbered[w]:
                buckets[weight[w]].discard(w)
                weight[w] += 1
                if weight[w] == len(buckets):
                    buckets.append(set())
                buckets[weight[w]].add(w)
                top = max(top, weight[w])
    peo = visit[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    adj = [set(a) for a in g.adj]
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        if any(w != parent and w not in adj[parent] for w in later):
            return False
    return True


# --- random instances -------------------------------------------------------

KINDS = ("unit-intervals", "intervals", "bip-perm", "cograph", "split")


@dataclass(frozen=True)
class Instance:
    kind: str
    graph: Graph
    intervals: IntervalRepresentation | None = None
    bipartite: BipartiteGraph | None = None
    ordering: StrongOrdering | None = None
    cotree: CotreeNode | None = None


def random_unit_intervals(n: int, rng: random.Random, length: int = 6) -> IntervalRepresentation:
    span = max(1, n * length // 3)
    return IntervalRepresentation(
        tuple((i, b, b + length) for i, b in enumerate(rng.randrange(span) for _ in range(n)))
    )


def random_intervals(n: int, rng: random.Random) -> IntervalRepresentation:
    out = []
    for i in range(n):
        b = rng.randrange(max(1, 2 * n))
        out.append((i, b, b + rng.randint(1, max(1, n))))
    return IntervalRepresentation(tuple(out))


def random_sparse_intervals(n: int, rng: random.Random, max_len: int = 8) -> IntervalRepresentation:
    """Intervals with births spread over ``[0, 2n)`` and short lengths, so
    the edge count stays linear in ``n``."""
    return IntervalRepresentation(
        tuple((i, b, b + rng.randint(1, max_len)) for i, b in enumerate(rng.randrange(max(1, 2 * n)) for _ in range(n)))
    )


def planted_p3_intervals(n: int, rng: random.Random) -> IntervalRepresentation:
    """Yes-instance for ``s = 2``: consecutive groups of three intervals,
    each a long interval holding two short ones, with neighbouring groups
    overlapping.  ``n`` is rounded down to a multiple of 3."""
    out = []
    for j in range(n // 3):
        b = 4 * j + rng.randint(0, 3)
        d = b + rng.randint(4, 10)
        for k in range(3):
            if k == 0:
                out.append((3 * j, b, d))
            else:
                lb = rng.randint(b, d - 1)
                out.append((3 * j + k, lb, lb + rng.randint(1, 6)))
    return IntervalRepresentation(tuple(out))


def random_bip_perm(n: int, rng: random.Random) -> tuple[BipartiteGraph, StrongOrdering]:
    """Bipartite permutation graph from a permutation that merges two
    increasing runs; the left side holds the positions of one run.

    Such permutations are exactly those with no decreasing subsequence of
    length three, so the inversion graph is bipartite, and listing each side
    by position gives a strong ordering.
    """
    k = rng.randint(0, n)
    pos = sorted(rng.sample(range(n), k))
    vals = sorted(rng.sample(range(n), k))
    return _merge_runs(n, pos, vals)


def planted_bip_perm(k_u: int, k_w: int, s: int, rng: random.Random) -> tuple[BipartiteGraph, StrongOrdering]:
    """Connected yes-instance with ``k_u`` U-centered and ``k_w`` W-centered
    stars.

    Stars are laid out along the ordering in a random interleaving, then
    every U-vertex's neighbourhood is randomly widened to an interval of W
    whose endpoints never decrease and which overlaps the next row.  Such a
    staircase adjacency is a strong ordering.
    """
    moves = ["u"] * k_u + ["w"] * k_w
    rng.shuffle(moves)
    n_u, n_w = k_u + s * k_w, k_w + s * k_u
    lo = [n_w] * n_u
    hi = [-1] * n_u
    iu = iw = 0
    for mv in moves:
        if mv == "u":
            lo[iu], hi[iu] = iw, iw + s - 1
            iu += 1
            iw += s
        else:
            for i in range(iu, iu + s):
                lo[i] = hi[i] = iw
            iu += s
            iw += 1
    for i in range(n_u):
        lo[i] = max(0, lo[i] - rng.randint(0, 1))
        hi[i] = min(n_w - 1, hi[i] + rng.randint(0, 1))
    for i in range(n_u - 2, -1, -1):
        lo[i] = min(lo[i], lo[i + 1])
    for i in range(1, n_u):
        hi[i] = max(hi[i], hi[i - 1])
    for i in range(n_u - 1):
        hi[i] = max(hi[i], lo[i + 1])
    edges = [(i, j) for i in range(n_u) for j in range(lo[i], hi[i] + 1)]
    b = BipartiteGraph.from_sides(n_u, n_w, edges)
    return b, StrongOrdering(tuple(sorted(b.left)), tuple(sorted(b.right)))


def _merge_runs(n: int, pos: list[int], vals: list[int]) -> tuple[BipartiteGraph, StrongOrdering]:
    in_u = set(pos)
    rest_pos = [i for i in range(n) if i not in in_u]
    rest_val = sorted(set(range(n)) - set(vals))
    perm = [0] * n
    for p, a in zip(pos, vals):
        perm[p] = a
    for p, a in zip(rest_pos, rest_val):
        perm[p] = a
    uid = {p: i for i, p in enumerate(pos)}
    wid = {p: i for i, p in enumerate(rest_pos)}
    edges = []
    for i in pos:
        # W-entries after position i with smaller value
        edges.extend((uid[i], wid[j]) for j in rest_pos if j > i and perm[j] < perm[i])
    for j in rest_pos:
        edges.extend((uid[i], wid[j]) for i in pos if i > j and perm[i] < perm[j])
    b = BipartiteGraph.from_sides(len(pos), len(rest_pos), edges)
    return b, StrongOrdering(tuple(sorted(b.left)), tuple(sorted(b.right)))


def random_cotree(vertices: list[int], rng: random.Random) -> CotreeNode:
    """Random binary cotree over ``vertices`` built top-down without
    recursion so large ``n`` is fine."""
    root_parts = list(vertices)
    rng.shuffle(root_parts)
    nodes: dict[int, CotreeNode] = {}
    todo = [(root_parts, None, 0)]
    order = []
    while todo:
        verts, parent, slot = todo.pop()
        key = len(order)
        order.append((parent, slot))
        if len(verts) == 1:
            nodes[key] = leaf(verts[0])
            continue
        cut = rng.randint(1, len(verts) - 1)
        nodes[key] = CotreeNode(rng.choice((UNION, JOIN)), None, [None, None], len(verts))
        todo.append((verts[:cut], key, 0))
        todo.append((verts[cut:], key, 1))
    for key in range(len(order) - 1, 0, -1):
        parent, slot = order[key]
        nodes[parent].children[slot] = nodes[key]
    return nodes[0]


def random_split(n: int, rng: random.Random) -> Graph:
    if n == 0:
        return Graph(0)
    c = rng.randint(1, n)
    perm = list(range(n))
    rng.shuffle(perm)
    clique, indep = perm[:c], perm[c:]
    p = rng.random()
    edges = list(combinations(clique, 2))
    edges += [(u, v) for u, v in product(indep, clique) if rng.random() < p]
    return Graph(n, edges)


def random_instance(kind: str, n: int, seed: int) -> Instance:
    """Seeded instance of ``kind``; the same arguments give the same instance."""
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind == "unit-intervals":
        rep = random_unit_intervals(n, rng)
        return Instance(kind, rep.to_graph(), intervals=rep)
    if kind == "intervals":
        rep = random_intervals(n, rng)
        return Instance(kind, rep.to_graph(), intervals=rep)
    if kind == "bip-perm":
        b, order = random_bip_perm(n, rng)
        return Instance(kind, b.to_graph(), bipartite=b, ordering=order)
    if kind == "cograph":
        if n == 0:
            return Instance(kind, Graph(0))
        tree = random_cotree(list(range(n)), rng)
        return Instance(kind, evaluate(tree, n), cotree=tree)
    if kind == "split":
        return Instance(kind, random_split(n, rng))
    raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# --- text formats -----------------------------------------------------------


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_x3c(text: str) -> X3CInstance:
    """``u s m`` header, the universe on one line, then ``m`` sets."""
    lines = _lines(text)
    try:
        u, s, m = (int(x) for x in lines[0].split())
    except (IndexError, ValueError):
        raise MalformedInstance("expected header 'u s m'") from None
    if len(lines) != m + 2:
        raise MalformedInstance(f"expected {m + 2} non-comment lines, found {len(lines)}")
    universe = tuple(lines[1].split())
    if len(universe) != u:
        raise MalformedInstance(f"header says {u} elements, universe line has {len(universe)}")
    return X3CInstance(universe, tuple(tuple(ln.split()) for ln in lines[2:]), s)


def format_x3c(inst: X3CInstance) -> str:
    out = [f"{len(inst.universe)} {inst.s} {len(inst.sets)}", " ".join(inst.universe)]
    out += [" ".join(st) for st in inst.sets]
    return "\n".join(out) + "\n"


def parse_tdm(text: str) -> TDMInstance:
    """``q t`` header, then ``t`` lines of ``r b y`` indices."""
    lines = _lines(text)
    try:
        q, t = (int(x) for x in lines[0].split())
        triples = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
    except (IndexError, ValueError):
        raise MalformedInstance("expected header 'q t' and integer triples") from None
    if len(triples) != t:
        raise MalformedInstance(f"header says {t} triples, found {len(triples)}")
    return TDMInstance(q, triples)


def random_x3c(u: int, sets: int, s: int, seed: int) -> X3CInstance:
    """Random X3C instance; with ``sets >= u/s`` the first ``u/s`` sets
    form a planted exact cover on a shuffled universe."""
    rng = random.Random(f"x3c:{u}:{sets}:{s}:{seed}")
    universe = tuple(str(i + 1) for i in range(u))
    shuffled = list(universe)
    rng.shuffle(shuffled)
    planted = [tuple(sorted(shuffled[i : i + s], key=int)) for i in range(0, u, s)]
    extra = [tuple(sorted(rng.sample(universe, s), key=int)) for _ in range(sets - len(planted))]
    return X3CInstance(universe, tuple(planted + extra)[:sets], s)
