import random

import pytest

from starpart.cograph import (
    JOIN,
    NEG,
    UNION,
    build_cotree,
    cograph_partition,
    evaluate,
    fill_cover_table,
    join_cell,
)
from starpart.generators import random_cotree
from starpart.graph import Graph, verify_partition
from starpart.oracle import oracle_decide
from support import cograph_stream, join_bruteforce, random_graph, rebracket

P4 = Graph(4, [(0, 1), (1, 2), (2, 3)])


class TestCotree:
    def test_p4_is_not_a_cograph(self):
        assert build_cotree(P4) is None

    def test_p3(self):
        tree = build_cotree(Graph(3, [(0, 1), (1, 2)]))
        assert tree.kind == JOIN
        assert sorted(c.kind for c in tree.children) == ["leaf", UNION]
        assert tree.sexpr() == "(join (union 0 2) 1)"

    def test_k2(self):
        tree = build_cotree(Graph(2, [(0, 1)]))
        assert tree.kind == JOIN and [c.vertex for c in tree.children] == [0, 1]

    def test_empty_graph(self):
        assert build_cotree(Graph(0)) is None

    def test_binary_and_reproduces_graph(self):
        rng = random.Random(41)
        for _ in range(200):
            n = rng.randint(1, 14)
            g = evaluate(random_cotree(list(range(n)), rng), n)
            tree = build_cotree(g)
            assert tree is not None and evaluate(tree, n) == g
            assert all(len(x.children) in (0, 2) for x in tree.postorder())
            assert sorted(tree.leaves()) == list(range(n))

    def test_recognition_matches_p4_freeness(self):
        from itertools import combinations, permutations

        rng = random.Random(42)
        for _ in range(150):
            g = random_graph(rng.randint(1, 7), rng.random(), rng)
            has_p4 = any(
                all(g.has_edge(p[i], p[i + 1]) for i in range(3))
                and not g.has_edge(p[0], p[2])
                and not g.has_edge(p[1], p[3])
                and not g.has_edge(p[0], p[3])
                for quad in combinations(range(g.n), 4)
                for p in permutations(quad)
            )
            assert (build_cotree(g) is None) == has_p4

    def test_deep_cotree_needs_no_recursion(self):
        n = 3000
        g = Graph(n, [(i, j) for j in range(n) for i in range(j) if j % 2 == 0 and i < 3])
        tree = build_cotree(g)
        assert tree is not None and len(tree.postorder()) == 2 * n - 1


class TestJoin:
    def test_cases(self):
        assert join_cell(1, 1, 2, 2, 0, 0, 2) == (2, 1)
        assert join_cell(1, 1, 5, 5, 0, 0, 2) == (4, 2)
        assert join_cell(3, 0, 3, 4, 0, 0, 2) == (4, 3)
        assert join_cell(1, 0, 1, 1, NEG, 0, 2) == (NEG, 0)

    def test_sanity_bounds(self):
        for s in (1, 2, 3):
            for size1 in range(1, 7):
                for size2 in range(1, 7):
                    for c1 in range(size1 + 1):
                        for c2 in range(size2 + 1):
                            l1, l2 = size1 - c1, size2 - c2
                            for own1 in range(min(l1, c1 * s) + 1):
                                val, _ = join_cell(c1, c2, size1, size2, own1, 0, s)
                                assert val <= (c1 + c2) * s and val <= l1 + l2

    def test_matches_brute_force_per_join(self):
        rng = random.Random(43)
        cells = case3 = 0
        for _ in range(80):
            s = rng.choice((1, 2, 3))
            n = rng.randint(2, 10)
            tree = random_cotree(list(range(n)), rng)
            g = evaluate(tree, n)
            table = fill_cover_table(tree, s, n)
            for node in tree.postorder():
                if node.kind != JOIN:
                    continue
                a, b = node.children
                la, lb = a.leaves(), b.leaves()
                for c1 in range(a.size + 1):
                    for c2 in range(b.size + 1):
                        val, case = join_cell(c1, c2, a.size, b.size, table.L[id(a)][c1], table.L[id(b)][c2], s)
                        assert val == join_bruteforce(g, la, lb, c1, c2, s)
                        cells += 1
                        case3 += case == 3
        assert cells > 1000 and case3 > 300


class TestPartition:
    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_star(self, s):
        g = Graph(s + 1, [(0, j) for j in range(1, s + 1)])
        p = cograph_partition(g, s)
        assert len(p.blocks) == 1 and p.blocks[0].center == 0

    def test_c4_s3(self):
        assert cograph_partition(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), 3) is None

    def test_not_a_cograph(self):
        with pytest.raises(ValueError, match="P4"):
            cograph_partition(Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]), 2)

    def test_matches_oracle(self):
        yes = 0
        for g, tree, s in cograph_stream(250, seed=44):
            p = cograph_partition(g, s)
            assert (p is not None) == oracle_decide(g, s)
            if p is None:
                continue
            yes += 1
            assert verify_partition(g, s, p)
            assert len(p.blocks) == g.n // (s + 1)
            # union independence: a block never spans two components
            comp_of = {v: i for i, comp in enumerate(g.components()) for v in comp}
            for blk in p.blocks:
                assert len({comp_of[v] for v in blk.vertices}) == 1
        assert yes > 80

    def test_rebracketing_keeps_decision(self):
        rng = random.Random(45)
        for g, tree, s in cograph_stream(150, seed=45):
            if g.n == 0:
                continue
            other = rebracket(tree, rng)
            assert evaluate(other, g.n) == g
            assert (cograph_partition(g, s, cotree=other) is None) == (cograph_partition(g, s) is None)

    def test_table_entries_bounded(self):
        for g, tree, s in cograph_stream(100, seed=46):
            if g.n == 0:
                continue
            k = g.n // (s + 1)
            table = fill_cover_table(tree, s, k)
            for node in tree.postorder():
                for c, val in enumerate(table.L[id(node)]):
                    if val != NEG:
                        assert val <= s * c and val <= node.size - c
