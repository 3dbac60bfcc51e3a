"""Plain-text readers and writers for graphs, partitions and instances.

All formats are line oriented, ASCII decimal, LF terminated.  Lines starting
with ``#`` are comments and are skipped by every reader.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

from .graph import BipartiteGraph, Block, Graph, StarPartition


class FormatError(ValueError):
    """Malformed or truncated input file."""


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _ints(line: str, count: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"{what}: expected {count} integers, got {line!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(f"{what}: non-integer token in {line!r}") from None


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


# -- graphs -------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise FormatError("graph: empty input")
    n, m = _ints(lines[0], 2, "graph header")
    if len(lines) - 1 != m:
        raise FormatError(f"graph: header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = _ints(ln, 2, "graph edge")
        if not 0 <= u < v < n:
            raise FormatError(f"graph: edge line {ln!r} violates 0 <= u < v < n")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise FormatError("graph: duplicate edge")
    return Graph(n, edges)


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# -- partitions ---------------------------------------------------------------

def parse_partition(text: str, s: int | None = None) -> StarPartition:
    blocks = []
    for ln in _lines(text):
        head, sep, tail = ln.partition(":")
        if not sep:
            raise FormatError(f"partition: missing ':' in {ln!r}")
        try:
            center = int(head)
            leaves = tuple(int(x) for x in tail.split())
        except ValueError:
            raise FormatError(f"partition: non-integer token in {ln!r}") from None
        blocks.append(Block(center, leaves))
    if s is None:
        if not blocks:
            raise FormatError("partition: cannot infer s from an empty partition")
        s = len(blocks[0].leaves)
    return StarPartition(s, tuple(blocks))


def format_partition(p: StarPartition) -> str:
    return "".join(f"{b.center}: {' '.join(map(str, b.leaves))}\n" for b in p.blocks)


# -- intervals ----------------------------------------------------------------

def parse_intervals(text: str) -> list[tuple[int, Fraction, Fraction]]:
    lines = _lines(text)
    if not lines:
        raise FormatError("intervals: empty input")
    (n,) = _ints(lines[0], 1, "intervals header")
    if len(lines) - 1 != n:
        raise FormatError(f"intervals: header announces {n} intervals, found {len(lines) - 1}")
    out = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"intervals: expected 'id birth death', got {ln!r}")
        try:
            out.append((int(parts[0]), Fraction(parts[1]), Fraction(parts[2])))
        except ValueError:
            raise FormatError(f"intervals: bad number in {ln!r}") from None
    if sorted(i for i, _, _ in out) != list(range(n)):
        raise FormatError("intervals: ids must be exactly 0..n-1")
    return out


def _num(x: Fraction | int | float) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        # exact decimal when the denominator allows it, else a ratio
        d = x.denominator
        for p in (2, 5):
            while d % p == 0:
                d //= p
        if d == 1:
            digits = 0
            while (x * 10**digits).denominator != 1:
                digits += 1
            scaled = abs(x.numerator * 10**digits // x.denominator)
            whole, frac = divmod(scaled, 10**digits)
            sign = "-" if x < 0 else ""
            return f"{sign}{whole}.{frac:0{digits}d}"
        return f"{x.numerator}/{x.denominator}"
    return repr(x)


def format_intervals(raw: Iterable[tuple[int, object, object]]) -> str:
    items = sorted(raw)
    out = [str(len(items))]
    out.extend(f"{i} {_num(b)} {_num(d)}" for i, b, d in items)
    return "\n".join(out) + "\n"


# -- bipartite graphs ---------------------------------------------------------

def parse_bipartite(text: str) -> tuple[BipartiteGraph, tuple[list[int], list[int]] | None]:
    """Parse ``nL nR m`` + edges, optionally followed by ``order:`` and two
    permutation lines (left side, then right side, local indices).

    Returns the graph (right index ``j`` mapped to id ``nL + j``) and the
    ordering in global ids, if present.
    """
    lines = _lines(text)
    if not lines:
        raise FormatError("bipartite: empty input")
    nl, nr, m = _ints(lines[0], 3, "bipartite header")
    if len(lines) < 1 + m:
        raise FormatError(f"bipartite: header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1 : 1 + m]:
        u, w = _ints(ln, 2, "bipartite edge")
        if not (0 <= u < nl and 0 <= w < nr):
            raise FormatError(f"bipartite: edge {ln!r} out of range")
        edges.append((u, w))
    rest = lines[1 + m :]
    order = None
    if rest:
        if rest[0] != "order:" or len(rest) != 3:
            raise FormatError("bipartite: trailing section must be 'order:' plus two lines")
        lo = _ints(rest[1], nl, "left order") if nl else []
        ro = _ints(rest[2], nr, "right order") if nr else []
        if sorted(lo) != list(range(nl)) or sorted(ro) != list(range(nr)):
            raise FormatError("bipartite: order lines must be permutations")
        order = (lo, [nl + w for w in ro])
    return BipartiteGraph.from_sides(nl, nr, edges), order


def format_bipartite(b: BipartiteGraph, order: tuple[list[int], list[int]] | None = None) -> str:
    """Inverse of :func:`parse_bipartite`; ``b`` must use ``from_sides`` ids."""
    nl = len(b.left)
    out = [f"{nl} {len(b.right)} {len(b.edges)}"]
    out.extend(f"{u} {w - nl}" for u, w in b.edges)
    if order is not None and nl and len(b.right):
        out.append("order:")
        out.append(" ".join(map(str, order[0])))
        out.append(" ".join(str(w - nl) for w in order[1]))
    return "\n".join(out) + "\n"
