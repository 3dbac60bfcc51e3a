"""Wall-clock ladder over instance sizes, one CSV row per size."""

from __future__ import annotations

import random
import time
from collections.abc import Iterable

from .bipperm import bipperm_partition
from .cograph import cograph_partition, evaluate
from .generators import planted_bip_perm, planted_p3_intervals, random_cotree, random_split, random_unit_intervals
from .interval import normalize_events, p3_decide, unit_interval_partition
from .split import p3_split

BENCH_CLASSES = ("interval", "unit-interval", "bip-perm", "cograph", "split")
HEADER = "class,n,m,micros,answer"


def parse_sizes(spec: str) -> list[int]:
    """``"1e3,1e4,5000"`` -> ``[1000, 10000, 5000]``."""
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        val = float(tok)
        if val != int(val) or val < 1:
            raise ValueError(f"size {tok!r} is not a positive integer")
        out.append(int(val))
    return out


def bench_point(cls: str, n: int, seed: int, s: int = 2) -> tuple[int, int, bool]:
    """Generate one instance and time only the solver; returns
    ``(m, microseconds, answer)``."""
    rng = random.Random(f"bench:{cls}:{n}:{seed}")
    if cls == "interval":
        rep = normalize_events(planted_p3_intervals(n, rng).intervals)
        m = rep.to_graph().m
        t0 = time.perf_counter()
        answer = p3_decide(rep).decision
    elif cls == "unit-interval":
        rep = random_unit_intervals(n, rng)
        m = rep.to_graph().m
        t0 = time.perf_counter()
        answer = unit_interval_partition(rep, s) is not None
    elif cls == "bip-perm":
        k = max(1, n // (2 * (s + 1)))
        b, order = planted_bip_perm(k, k, s, rng)
        n, m = b.n, len(b.edges)
        t0 = time.perf_counter()
        answer = bipperm_partition(b, order, s) is not None
    elif cls == "cograph":
        g = evaluate(random_cotree(list(range(n)), rng), n)
        m = g.m
        t0 = time.perf_counter()
        answer = cograph_partition(g, s) is not None
    elif cls == "split":
        g = random_split(n, rng)
        m = g.m
        t0 = time.perf_counter()
        answer = p3_split(g) is not None
    else:
        raise ValueError(f"cannot bench class {cls!r}")
    micros = int((time.perf_counter() - t0) * 1e6)
    return m, micros, answer


def bench_rows(cls: str, sizes: Iterable[int], seed: int, s: int = 2) -> list[str]:
    rows = [HEADER]
    for n in sizes:
        m, micros, answer = bench_point(cls, n, seed, s)
        rows.append(f"{cls},{n},{m},{micros},{'yes' if answer else 'no'}")
    return rows
