"""Exhaustive small-graph enumeration, isomorphism testing, canonical forms of
dissimilarity matrices, and the uniqueness sweep over boundary matrices.

Three uniqueness classes are tracked for a graph G of order n whose boundary
matrix is B:

* Hkn -- no other graph of order n has boundary matrix B;
* Hk  -- no other graph of any order has boundary matrix B;
* Hn  -- no other graph of order n has *some* vertex subset S with D_S = B
  (the subset need not be that graph's boundary).
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .errors import BoundExceeded, GraphboundError
from .graph import (
    Family,
    Graph,
    boundary_matrix,
    classify_family,
    complete_graph,
    cycle_graph,
    nontrivial_blocks,
)
from .matrix import DissimilarityMatrix

MAX_ENUM_ORDER = 8
MAX_CANON_ORDER = 9


# -- isomorphism ---------------------------------------------------------------

def _refine(g: Graph, rounds: int | None = None) -> list[int]:
    """Colour refinement seeded with (degree, sorted distance row)."""
    d = g.distances
    adj = g._adj0
    colors = [hash((len(adj[v]), tuple(sorted(d[v])))) for v in range(g.n)]
    for _ in range(g.n if rounds is None else rounds):
        new = [hash((colors[v], tuple(sorted(colors[w] for w in adj[v])))) for v in range(g.n)]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
    return colors


def graph_invariant(g: Graph) -> tuple:
    """Isomorphism invariant; equal for isomorphic graphs, usually distinct otherwise."""
    return g.n, g.m, tuple(sorted(_refine(g)))


def find_isomorphism(g1: Graph, g2: Graph) -> dict[int, int] | None:
    """A vertex bijection g1 -> g2 preserving distances, or None."""
    if g1.n != g2.n or g1.m != g2.m:
        return None
    c1, c2 = _refine(g1), _refine(g2)
    if sorted(c1) != sorted(c2):
        return None
    d1, d2 = g1.distances, g2.distances
    by_color: dict[int, list[int]] = defaultdict(list)
    for v, c in enumerate(c2):
        by_color[c].append(v)
    class_size = {c: len(vs) for c, vs in by_color.items()}
    # most constrained first; then keep the search connected via BFS distance to the seed
    order = sorted(range(g1.n), key=lambda v: (class_size[c1[v]], v))
    seed = order[0]
    order = sorted(range(g1.n), key=lambda v: (v != seed, d1[seed][v], class_size[c1[v]], v))
    mapping = [-1] * g1.n
    used = [False] * g2.n

    def extend(i: int) -> bool:
        if i == g1.n:
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if used[w]:
                continue
            if all(d1[v][order[j]] == d2[w][mapping[order[j]]] for j in range(i)):
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
        mapping[v] = -1
        return False

    if not extend(0):
        return None
    return {v + 1: mapping[v] + 1 for v in range(g1.n)}


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


class IsoClassSet:
    """Collects graphs, keeping one representative per isomorphism class."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[Graph]] = defaultdict(list)
        self.graphs: list[Graph] = []

    def add(self, g: Graph) -> bool:
        bucket = self._buckets[graph_invariant(g)]
        if any(are_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.graphs.append(g)
        return True

    def __contains__(self, g: Graph) -> bool:
        return any(are_isomorphic(g, h) for h in self._buckets.get(graph_invariant(g), ()))

    def __len__(self) -> int:
        return len(self.graphs)


# -- enumeration ---------------------------------------------------------------

def _grow(
    seeds: Iterable[Graph],
    extensions: Callable[[Graph], Iterable[Iterable[int]]],
    steps: int,
) -> list[Graph]:
    """Add one vertex ``steps`` times; each extension names the new vertex's neighbours."""
    current = list(seeds)
    for _ in range(steps):
        pool = IsoClassSet()
        for g in current:
            new = g.n + 1
            for nbrs in extensions(g):
                pool.add(Graph(new, g.edges | {(u, new) for u in nbrs}))
        current = pool.graphs
    return current


def _any_subset(g: Graph) -> Iterator[tuple[int, ...]]:
    vs = list(g.vertices())
    for r in range(1, g.n + 1):
        yield from itertools.combinations(vs, r)


def _single_vertex(g: Graph) -> Iterator[tuple[int, ...]]:
    return ((v,) for v in g.vertices())


def _vertex_or_block(g: Graph) -> Iterator[tuple[int, ...]]:
    yield from _single_vertex(g)
    for b in nontrivial_blocks(g):
        yield tuple(sorted(b))
    for u, v in g.sorted_edges():
        # a K_2 block grows into a triangle
        if not any(u in b and v in b for b in nontrivial_blocks(g)):
            yield (u, v)


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    return tuple(_grow(_connected(n - 1), _any_subset, 1))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices.

    Every connected graph has a non-cut vertex, so each class on n vertices is
    reached by attaching a vertex to a non-empty subset of some class on n - 1.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise BoundExceeded(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")
    yield from _connected(n)


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[Graph, ...]:
    if n < 1:
        raise GraphboundError("tree order must be >= 1")
    if n == 1:
        return (Graph(1),)
    return tuple(_grow(enumerate_trees(n - 1), _single_vertex, 1))


@lru_cache(maxsize=None)
def enumerate_block_graphs(n: int) -> tuple[Graph, ...]:
    """Removing a non-cut vertex of a block graph leaves a block graph."""
    if n < 1:
        raise GraphboundError("order must be >= 1")
    if n == 1:
        return (Graph(1),)
    return tuple(_grow(enumerate_block_graphs(n - 1), _vertex_or_block, 1))


@lru_cache(maxsize=None)
def enumerate_unicyclic_graphs(n: int) -> tuple[Graph, ...]:
    """Cycles C_g (3 <= g <= n) with trees hung on them, one per class."""
    pool = IsoClassSet()
    for g in range(3, n + 1):
        for h in _grow([cycle_graph(g)], _single_vertex, n - g):
            pool.add(h)
    return tuple(pool.graphs)


@lru_cache(maxsize=None)
def enumerate_one_block_graphs(n: int) -> tuple[Graph, ...]:
    """A clique K_h (3 <= h <= n) with trees attached to its vertices."""
    pool = IsoClassSet()
    for h in range(3, n + 1):
        for g in _grow([complete_graph(h)], _single_vertex, n - h):
            pool.add(g)
    return tuple(pool.graphs)


# -- canonical matrices --------------------------------------------------------

@dataclass(frozen=True)
class CanonicalMatrix:
    """Lexicographically least simultaneous permutation of a matrix.

    Entries are compared in the column-wise upper-triangle order
    (0,1), (0,2), (1,2), (0,3), ... so that every prefix of a permutation fixes
    a prefix of the sequence; ``perm[a]`` is the source row placed at ``a``.
    """

    rows: tuple[tuple[int, ...], ...]
    perm: tuple[int, ...] = field(compare=False, hash=False)

    @property
    def kappa(self) -> int:
        return len(self.rows)

    def matrix(self) -> DissimilarityMatrix:
        return DissimilarityMatrix(self.rows)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)


def _twin_reps(r: Sequence[Sequence[int]]) -> list[int]:
    """rep[a]: least index b whose transposition with a is an automorphism."""
    k = len(r)
    rep = list(range(k))
    for a in range(k):
        for b in range(a):
            if rep[b] == b and all(r[a][x] == r[b][x] for x in range(k) if x != a and x != b):
                rep[a] = b
                break
    return rep


def canonical_matrix(m: DissimilarityMatrix) -> CanonicalMatrix:
    k = m.order
    if k > MAX_CANON_ORDER:
        raise BoundExceeded(f"canonical form supports order <= {MAX_CANON_ORDER}, got {k}")
    r = m.rows
    rep = _twin_reps(r)
    prefixes: list[tuple[int, ...]] = [()]
    for j in range(k):
        best: tuple[int, ...] | None = None
        nxt: list[tuple[int, ...]] = []
        for p in prefixes:
            taken = set(p)
            seen_rep = set()
            for c in range(k):
                if c in taken or rep[c] in seen_rep:
                    continue
                seen_rep.add(rep[c])
                key = tuple(r[p[i]][c] for i in range(j))
                if best is None or key < best:
                    best = key
                    nxt = [p + (c,)]
                elif key == best:
                    nxt.append(p + (c,))
        prefixes = nxt
    perm = prefixes[0]
    return CanonicalMatrix(m.permuted(perm).rows, perm)


# -- uniqueness sweep ----------------------------------------------------------

@dataclass(frozen=True)
class GraphRecord:
    graph: Graph
    kappa: int
    canon: CanonicalMatrix

    @property
    def n(self) -> int:
        return self.graph.n


def graph_record(g: Graph) -> GraphRecord:
    bp, bm = boundary_matrix(g)
    return GraphRecord(g, bp.kappa, canonical_matrix(bm))


@dataclass
class Bucket:
    kind: str  # "Hkn", "Hn" or "Hk"
    orders: tuple[int, ...]
    kappa: int
    canon: CanonicalMatrix
    graphs: list[Graph]


@dataclass
class ConjectureReport:
    n_max: int
    family: str | None
    graph_count: int
    hkn: list[Bucket]
    hn: list[Bucket]
    hk: list[Bucket]

    @property
    def violates_hkn(self) -> bool:
        return bool(self.hkn)

    @property
    def violates_hn(self) -> bool:
        return bool(self.hn)

    @property
    def violates_hk(self) -> bool:
        return bool(self.hk)

    def cross_order_hk(self) -> list[Bucket]:
        return [b for b in self.hk if len(set(b.orders)) > 1]


_FAMILY_FILTERS = {
    "tree": Family.TREE,
    "block": Family.BLOCK,
    "one-block": Family.ONE_BLOCK,
    "unicyclic": Family.UNICYCLIC,
    "cycle": Family.CYCLE,
}


def universe(n_max: int, family: str | None = None) -> list[Graph]:
    """Connected graphs of order 2..n_max, optionally restricted to a family."""
    want = None
    if family is not None:
        if family not in _FAMILY_FILTERS:
            raise GraphboundError(f"unknown family {family!r}")
        want = _FAMILY_FILTERS[family]
    out = []
    for n in range(2, n_max + 1):
        for g in enumerate_connected_graphs(n):
            if want is None or want in classify_family(g):
                out.append(g)
    return out


def records_for_shard(n_max: int, family: str | None, shards: int, shard_id: int) -> list[GraphRecord]:
    if not 0 <= shard_id < shards:
        raise GraphboundError(f"shard id {shard_id} outside 0..{shards - 1}")
    return [graph_record(g) for i, g in enumerate(universe(n_max, family)) if i % shards == shard_id]


def _sorted_entries(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    k = len(rows)
    return tuple(sorted(rows[i][j] for i in range(k) for j in range(i + 1, k)))


def hn_hosts(records: Sequence[GraphRecord]) -> dict[tuple[int, CanonicalMatrix], list[Graph]]:
    """For each (n, boundary matrix B), every graph of order n with some D_S = B."""
    targets: dict[tuple[int, int, tuple[int, ...]], set[CanonicalMatrix]] = defaultdict(set)
    for rec in records:
        targets[(rec.n, rec.kappa, _sorted_entries(rec.canon.rows))].add(rec.canon)
    sizes_by_n: dict[int, set[int]] = defaultdict(set)
    for n, k, _ in targets:
        sizes_by_n[n].add(k)
    hosts: dict[tuple[int, CanonicalMatrix], list[Graph]] = defaultdict(list)
    for rec in records:
        g = rec.graph
        d = g.distances
        hit: set[CanonicalMatrix] = set()
        for k in sorted(sizes_by_n[g.n]):
            for s in itertools.combinations(range(g.n), k):
                rows = tuple(tuple(d[a][b] for b in s) for a in s)
                key = (g.n, k, _sorted_entries(rows))
                if key not in targets:
                    continue
                c = canonical_matrix(DissimilarityMatrix(rows))
                if c in targets[key]:
                    hit.add(c)
        for c in hit:
            hosts[(g.n, c)].append(g)
    return hosts


def buckets_from_records(records: Sequence[GraphRecord]) -> tuple[list[Bucket], list[Bucket], list[Bucket]]:
    by_nc: dict[tuple[int, CanonicalMatrix], list[GraphRecord]] = defaultdict(list)
    by_c: dict[CanonicalMatrix, list[GraphRecord]] = defaultdict(list)
    for rec in records:
        by_nc[(rec.n, rec.canon)].append(rec)
        by_c[rec.canon].append(rec)

    def order_key(b: Bucket):
        return b.orders, b.kappa, b.canon.flat()

    hkn = [
        Bucket("Hkn", (n,), c.kappa, c, [r.graph for r in rs])
        for (n, c), rs in by_nc.items()
        if len(rs) > 1
    ]
    hk = [
        Bucket("Hk", tuple(sorted({r.n for r in rs})), c.kappa, c, [r.graph for r in rs])
        for c, rs in by_c.items()
        if len(rs) > 1
    ]
    hn = [
        Bucket("Hn", (n,), c.kappa, c, gs)
        for (n, c), gs in hn_hosts(records).items()
        if len(gs) > 1
    ]
    return sorted(hkn, key=order_key), sorted(hn, key=order_key), sorted(hk, key=order_key)


def report_from_records(n_max: int, family: str | None, records: Sequence[GraphRecord]) -> ConjectureReport:
    records = sorted(records, key=lambda r: (r.n, r.graph.m, r.graph.sorted_edges()))
    hkn, hn, hk = buckets_from_records(records)
    return ConjectureReport(n_max, family, len(records), hkn, hn, hk)


def _shard_job(args: tuple[int, str | None, int, int]) -> list[GraphRecord]:
    return records_for_shard(*args)


def test_conjecture(n_max: int, family: str | None = None, workers: int = 1) -> ConjectureReport:
    """Sweep all connected graphs of order 2..n_max for boundary-matrix collisions.

    A non-empty Hkn list is a counterexample to uniqueness given order and
    boundary; it is returned like any other result.
    """
    if not 2 <= n_max <= MAX_ENUM_ORDER:
        raise BoundExceeded(f"n_max must lie in 2..{MAX_ENUM_ORDER}")
    if workers <= 1:
        records = records_for_shard(n_max, family, 1, 0)
    else:
        jobs = [(n_max, family, workers, i) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            records = [r for part in pool.map(_shard_job, jobs) for r in part]
    return report_from_records(n_max, family, records)


test_conjecture.__test__ = False  # keep pytest from collecting it


@lru_cache(maxsize=8)
def _universe_records(n_max: int) -> tuple[GraphRecord, ...]:
    return tuple(records_for_shard(n_max, None, 1, 0))


@dataclass(frozen=True)
class Membership:
    in_hk: bool
    in_hn: bool
    in_hkn: bool


def _hosts(g: Graph, canon: CanonicalMatrix) -> bool:
    """Some |canon|-subset S of V(g) has D_S equal to canon up to permutation."""
    d = g.distances
    want = _sorted_entries(canon.rows)
    for s in itertools.combinations(range(g.n), canon.kappa):
        rows = tuple(tuple(d[a][b] for b in s) for a in s)
        if _sorted_entries(rows) == want and canonical_matrix(DissimilarityMatrix(rows)) == canon:
            return True
    return False


def h_class_membership(g: Graph, n_max: int) -> Membership:
    """Uniqueness-class membership of g relative to all connected graphs up to n_max."""
    if not 2 <= g.n <= n_max <= MAX_ENUM_ORDER:
        raise BoundExceeded(f"need 2 <= n(g) = {g.n} <= n_max = {n_max} <= {MAX_ENUM_ORDER}")
    rec = graph_record(g)
    records = _universe_records(n_max)
    # isomorphic graphs share the canonical matrix, so filter on it first
    rivals = [r for r in records if r.canon == rec.canon and not (r.n == g.n and are_isomorphic(r.graph, g))]
    in_hk = not rivals
    in_hkn = not any(r.n == g.n for r in rivals)
    in_hn = not any(
        r.n == g.n and _hosts(r.graph, rec.canon) and not are_isomorphic(r.graph, g) for r in records
    )
    return Membership(in_hk, in_hn, in_hkn)


# -- report files --------------------------------------------------------------

def graph_to_token(g: Graph) -> str:
    if g.n == 1:
        return "K1"
    return ",".join(f"{u}-{v}" for u, v in g.sorted_edges())


def graph_from_token(tok: str) -> Graph:
    tok = tok.strip()
    if tok == "K1":
        return Graph(1)
    edges = [tuple(int(x) for x in e.split("-")) for e in tok.split(",")]
    n = max(max(e) for e in edges)
    return Graph.from_edges(n, edges)


def _bucket_line(b: Bucket) -> str:
    orders = ",".join(str(n) for n in b.orders)
    flat = " ".join(str(x) for x in b.canon.flat())
    return f"{orders} {b.kappa} {flat} : " + ";".join(graph_to_token(g) for g in b.graphs)


def format_report(rep: ConjectureReport) -> str:
    lines = [f"n_max={rep.n_max}"]
    for title, buckets in (("Hkn", rep.hkn), ("Hn", rep.hn), ("Hk", rep.hk)):
        lines.append(f"# {title} {len(buckets)}")
        lines.extend(_bucket_line(b) for b in buckets)
    return "\n".join(lines) + "\n"


def format_fragment(n_max: int, shards: int, shard_id: int, records: Sequence[GraphRecord]) -> str:
    lines = [f"n_max={n_max} shard={shard_id}/{shards}"]
    for r in records:
        flat = " ".join(str(x) for x in r.canon.flat())
        lines.append(f"{r.n} {r.kappa} {flat} : {graph_to_token(r.graph)}")
    return "\n".join(lines) + "\n"


def parse_fragment(text: str) -> tuple[int, list[GraphRecord]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n_max="):
        raise GraphboundError("fragment must start with an n_max= header")
    n_max = int(lines[0].split()[0].split("=")[1])
    records = []
    for ln in lines[1:]:
        head, tail = ln.split(":", 1)
        g = graph_from_token(tail)
        records.append(graph_record(g))
    return n_max, records
