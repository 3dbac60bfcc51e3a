"""Acceptance suite: one PASS/FAIL line per criterion, printed to the
terminal even under output capture."""

import random
import statistics
import time
from collections import Counter
from pathlib import Path

import pytest

from starpart.bipperm import bipperm_partition, star_counts
from starpart.cli import main
from starpart.cograph import JOIN, cograph_partition, fill_cover_table, join_cell
from starpart.generators import (
    TDMInstance,
    X3CInstance,
    is_chordal,
    planted_bip_perm,
    planted_p3_intervals,
    subdivide_edge,
    tdm_brute_force,
    tdm_to_chordal,
    x3c_brute_force,
    x3c_to_split,
)
from starpart.formats import format_bipartite, write_text
from starpart.graph import verify_partition
from starpart.interval import normalize_events, p3_construct, p3_decide, unit_interval_partition
from starpart.oracle import oracle_decide
from starpart.split import p3_split_detailed
from support import (
    SIX,
    SIX_TRACE,
    bip_perm_stream,
    cograph_stream,
    interval_stream,
    join_bruteforce,
    random_graph,
    split_stream,
    unit_interval_stream,
    x3c_orbits,
)

DATA = Path(__file__).parent / "data"

# partitions emitted by the solvers in this module, and how many verified
CERTS = Counter()


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _check(g, s, p) -> bool:
    CERTS["emitted"] += 1
    ok = bool(verify_partition(g, s, p))
    CERTS["verified"] += ok
    return ok


def test_criterion_01_six_interval_trace(report):
    p3_decide(SIX)  # warm-up
    best = min(_timed(lambda: p3_decide(SIX))[1] for _ in range(20))
    res = p3_decide(SIX)
    ok = res.decision and res.sizes == SIX_TRACE and best < 1e-3
    report(1, ok, f"trace={' '.join(map(str, res.sizes))} best={best * 1e6:.0f}us (< 1000us)")


def test_criterion_02_interval_oracle(report):
    t0 = time.perf_counter()
    count = mismatches = bad = yes = 0
    for raw in interval_stream(1000, seed=2):
        rep = normalize_events(raw.intervals)
        g = rep.to_graph()
        dec = p3_decide(rep).decision
        mismatches += dec != oracle_decide(g, 2)
        p = p3_construct(rep)
        mismatches += (p is not None) != dec
        if p is not None:
            yes += 1
            bad += not _check(g, 2, p)
        count += 1
    elapsed = time.perf_counter() - t0
    ok = count == 1000 and mismatches == 0 and bad == 0 and elapsed < 60
    report(2, ok, f"{count} instances, {yes} yes, {mismatches} mismatches, {bad} invalid, {elapsed:.1f}s (< 60s)")


def test_criterion_03_unit_interval_oracle(report):
    count = mismatches = bad = yes = 0
    for rep, s in unit_interval_stream(1000, seed=3):
        g = rep.to_graph()
        p = unit_interval_partition(rep, s)
        mismatches += (p is not None) != oracle_decide(g, s)
        if p is not None:
            yes += 1
            bad += not _check(g, s, p)
        count += 1
    report(3, count == 1000 and mismatches == 0 and bad == 0, f"{count} instances, {yes} yes, {mismatches} mismatches, {bad} invalid")


def test_criterion_04_bipperm_oracle(report):
    count = mismatches = bad = wrong_counts = yes = 0
    for b, ord, s in bip_perm_stream(500, seed=4):
        g = b.to_graph()
        p = bipperm_partition(b, ord, s)
        mismatches += (p is not None) != oracle_decide(g, s)
        count += 1
        if p is None:
            continue
        yes += 1
        bad += not _check(g, s, p)
        left = set(b.left)
        for comp in g.components():
            n_u = sum(v in left for v in comp)
            k_u, k_w = star_counts(n_u, len(comp) - n_u, s)
            centers = [blk.center for blk in p.blocks if blk.center in comp]
            got_u = sum(c in left for c in centers)
            wrong_counts += (got_u, len(centers) - got_u) != (k_u, k_w)
    ok = count == 500 and mismatches == bad == wrong_counts == 0
    report(4, ok, f"{count} instances, {yes} yes, {mismatches} mismatches, {bad} invalid, {wrong_counts} center-count errors")


def test_criterion_05_cograph_oracle_and_join_arbiter(report):
    count = mismatches = bad = yes = 0
    cells = case3 = join_mismatches = 0
    for g, tree, s in cograph_stream(500, seed=5):
        p = cograph_partition(g, s)
        mismatches += (p is not None) != oracle_decide(g, s)
        count += 1
        if p is not None:
            yes += 1
            bad += not _check(g, s, p)
        if g.n == 0:
            continue
        table = fill_cover_table(tree, s, g.n)
        for node in tree.postorder():
            if node.kind != JOIN or node.size > 10:
                continue
            a, c = node.children
            la, lc = a.leaves(), c.leaves()
            for c1 in range(a.size + 1):
                for c2 in range(c.size + 1):
                    val, case = join_cell(c1, c2, a.size, c.size, table.L[id(a)][c1], table.L[id(c)][c2], s)
                    join_mismatches += val != join_bruteforce(g, la, lc, c1, c2, s)
                    cells += 1
                    case3 += case == 3
    ok = count == 500 and mismatches == bad == join_mismatches == 0
    report(
        5,
        ok,
        f"{count} instances, {yes} yes, {mismatches} mismatches, {bad} invalid; "
        f"join arbiter {cells} cells ({case3} lopsided) {join_mismatches} mismatches",
    )


def test_criterion_06_split_oracle(report):
    count = mismatches = bad = infeasible = yes = 0
    for g in split_stream(500, seed=6):
        res = p3_split_detailed(g)
        mismatches += (res.partition is not None) != oracle_decide(g, 2)
        count += 1
        if res.partition is None:
            continue
        yes += 1
        bad += not _check(g, 2, res.partition)
        if res.factor is not None:
            gg = res.gadget
            infeasible += bool(res.factor.violations(res.decomposition))
            infeasible += res.z_degree % 2 != gg.r or res.z_degree > 2 * gg.q + gg.r
    ok = count == 500 and mismatches == bad == infeasible == 0
    report(6, ok, f"{count} instances, {yes} yes, {mismatches} mismatches, {bad} invalid, {infeasible} infeasible factors")


def test_criterion_07_reductions(report):
    x3c = x3c_bad = x3c_yes = 0
    for u, s in [(2, 2), (4, 2), (6, 2), (8, 2), (3, 3), (6, 3), (9, 3)]:
        universe = tuple(str(i) for i in range(u))
        for col in x3c_orbits(u, s, 5):
            inst = X3CInstance(universe, tuple(tuple(universe[x] for x in st) for st in col), s)
            g, _ = x3c_to_split(inst, s)
            expect = x3c_brute_force(inst)
            x3c_bad += oracle_decide(g, s) != expect
            x3c_yes += expect
            x3c += 1
    tdm = tdm_bad = not_chordal = tdm_yes = 0
    for q in (0, 1, 2):
        pool = [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
        for mask in range(1 << len(pool)):
            inst = TDMInstance(q, tuple(t for i, t in enumerate(pool) if mask >> i & 1))
            g, _ = tdm_to_chordal(inst)
            not_chordal += not is_chordal(g)
            expect = tdm_brute_force(inst)
            tdm_bad += oracle_decide(g, 2) != expect
            tdm_yes += expect
            tdm += 1
    ok = x3c_bad == tdm_bad == not_chordal == 0
    report(
        7,
        ok,
        f"X3C {x3c} classes (|U|<=9, |S|<=5, up to relabeling; {x3c_yes} yes) {x3c_bad} mismatches; "
        f"3DM {tdm} instances (q<=2; {tdm_yes} yes) {tdm_bad} mismatches, {not_chordal} non-chordal",
    )


def test_criterion_08_subdivision(report):
    rng = random.Random(8)
    pairs = mismatches = 0
    while pairs < 200:
        g = random_graph(rng.randint(2, 9), rng.random(), rng)
        if not g.m:
            continue
        e = rng.choice(g.edges)
        mismatches += oracle_decide(g, 2) != oracle_decide(subdivide_edge(g, e), 2)
        pairs += 1
    report(8, mismatches == 0, f"{pairs} (graph, edge) pairs, {mismatches} mismatches")


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _interval_time(n: int, seed: int) -> float:
    rep = normalize_events(planted_p3_intervals(n, random.Random(f"scale:{n}:{seed}")).intervals)
    res, elapsed = _timed(lambda: p3_decide(rep))
    assert res.decision
    return elapsed


def test_criterion_09_scaling(report):
    t_big = _interval_time(100_000, 0)
    b, ord = planted_bip_perm(500, 500, 2, random.Random("scale:bip"))
    p, t_bip = _timed(lambda: bipperm_partition(b, ord, 2))
    bip_ok = p is not None and _check(b.to_graph(), 2, p)
    t1 = statistics.median(_interval_time(10_000, k) for k in range(3))
    t2 = statistics.median(_interval_time(20_000, k) for k in range(3))
    ratio = t2 / t1
    ok = t_big < 2 and bip_ok and t_bip < 10 and ratio < 3
    report(
        9,
        ok,
        f"interval n=1e5 {t_big:.2f}s (< 2s); bip-perm n={b.n} {t_bip:.2f}s (< 10s); "
        f"interval 1e4->2e4 ratio {ratio:.2f} (< 3)",
    )


def test_criterion_10_certificates(report, tmp_path, capsys):
    inputs = {
        "interval": DATA / "six.ivl",
        "oracle": DATA / "six.graph",
    }
    b, ord = planted_bip_perm(2, 1, 2, random.Random("cert:bip"))
    inputs["bip-perm"] = tmp_path / "planted.bip"
    write_text(inputs["bip-perm"], format_bipartite(b, (list(ord.u_order), list(ord.w_order))))
    for kind, cls in [("unit-intervals", "unit-interval"), ("cograph", "cograph"), ("split", "split")]:
        for seed in range(40):
            path = tmp_path / f"{kind}-{seed}.txt"
            assert main(["gen", "random", "--kind", kind, "--n", "9", "--seed", str(seed), "--output", str(path)]) == 0
            if main(["solve", "--class", cls, "--s", "2", "--input", str(path)]) == 0:
                inputs[cls] = path
                break
    capsys.readouterr()
    round_trips = failures = 0
    for cls, path in sorted(inputs.items()):
        cert = tmp_path / f"{cls}.part"
        code = main(["solve", "--class", cls, "--s", "2", "--input", str(path), "--certificate", str(cert)])
        code_v = main(["verify", "--input", str(path), "--partition", str(cert)])
        round_trips += 1
        failures += code != 0 or code_v != 0
    capsys.readouterr()
    suites_ok = CERTS["emitted"] == CERTS["verified"]
    ok = suites_ok and failures == 0 and len(inputs) == 6
    report(
        10,
        ok,
        f"{CERTS['verified']}/{CERTS['emitted']} emitted partitions valid across this suite; "
        f"CLI round trips {round_trips - failures}/{round_trips} over {len(inputs)} classes",
    )
