"""Simple connected graphs on vertices 1..n: BFS distances, the boundary
(mutually maximally distant vertices), family classification and resolving
set checks.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegenerateInput,
    DisconnectedInput,
    FamilyMismatch,
    FormatError,
    GraphboundError,
)
from .matrix import DissimilarityMatrix


def bfs_distances(n: int, adj: Sequence[Iterable[int]], source: int) -> list[int | None]:
    """Distances from ``source`` over 0-based adjacency lists; None if unreachable."""
    dist: list[int | None] = [None] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is None:
                dist[w] = du
                queue.append(w)
    return dist


@dataclass(frozen=True)
class Graph:
    """Undirected simple connected graph with vertex ids 1..n."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphboundError("graph order must be >= 1")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphboundError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphboundError(f"edge {u}-{v} outside 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if any(d is None for d in bfs_distances(self.n, self._adj0, 0)):
            raise DisconnectedInput(f"graph on {self.n} vertices is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = [tuple(e) for e in edges]
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphboundError(f"duplicate edge {u}-{v}")
            seen.add(key)
        return cls(n, frozenset(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _adj0(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u - 1].append(v - 1)
            adj[v - 1].append(u - 1)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(w + 1 for w in self._adj0[v - 1])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj0[v - 1])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        """Apply a vertex permutation; vertices missing from ``mapping`` stay put."""
        image = [mapping.get(v, v) for v in self.vertices()]
        if sorted(image) != list(self.vertices()):
            raise GraphboundError("relabel mapping is not a permutation of the vertices")
        return Graph(self.n, frozenset((mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges))

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """0-based all-pairs BFS distance table."""
        return tuple(tuple(bfs_distances(self.n, self._adj0, s)) for s in range(self.n))

    def dist(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        return self.distances[u - 1][v - 1]

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphboundError(f"vertex {v} outside 1..{self.n}")


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((1, i) for i in range(2, leaves + 2)))


# -- distances -----------------------------------------------------------------

def apsp(g: Graph) -> DissimilarityMatrix:
    return DissimilarityMatrix(g.distances)


def submatrix(g: Graph, vertices: Sequence[int]) -> DissimilarityMatrix:
    """Distance matrix restricted to ``vertices`` (1-based ids, in that order)."""
    d = g.distances
    return DissimilarityMatrix(tuple(tuple(d[u - 1][v - 1] for v in vertices) for u in vertices))


@dataclass(frozen=True)
class EccentricityProfile:
    ecc: tuple[int, ...]
    radius: int
    diameter: int

    def center(self) -> list[int]:
        return [v + 1 for v, e in enumerate(self.ecc) if e == self.radius]


def eccentricity_profile(g: Graph) -> EccentricityProfile:
    ecc = tuple(max(row) for row in g.distances)
    return EccentricityProfile(ecc, min(ecc), max(ecc))


# -- boundary ------------------------------------------------------------------

class Label(enum.Enum):
    LEAF = "Leaf"
    NON_LEAF = "NonLeafBoundary"


@dataclass(frozen=True)
class BoundaryPartition:
    boundary: tuple[int, ...]
    labels: tuple[Label, ...]

    @property
    def kappa(self) -> int:
        return len(self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)

    def __iter__(self):
        return iter(self.boundary)

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v, lab in zip(self.boundary, self.labels) if lab is Label.LEAF)

    @property
    def non_leaves(self) -> tuple[int, ...]:
        return tuple(v for v, lab in zip(self.boundary, self.labels) if lab is Label.NON_LEAF)


def is_maximally_distant(g: Graph, d: DissimilarityMatrix, u: int, v: int) -> bool:
    """True iff no neighbour of v is farther from u than v is."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise GraphboundError("u and v must differ")
    r = d.rows[u - 1]
    duv = r[v - 1]
    return all(r[w] <= duv for w in g._adj0[v - 1])


def _partition(g: Graph, vertices: Iterable[int]) -> BoundaryPartition:
    bd = tuple(sorted(set(vertices)))
    labels = tuple(Label.LEAF if g.degree(v) == 1 else Label.NON_LEAF for v in bd)
    return BoundaryPartition(bd, labels)


def boundary(g: Graph) -> BoundaryPartition:
    """All vertices that belong to some mutually maximally distant pair."""
    if g.n < 2:
        raise DegenerateInput("boundary needs at least 2 vertices")
    d = g.distances
    adj = g._adj0
    # far[u][v]: v is maximally distant from u
    far = [[all(d[u][w] <= d[u][v] for w in adj[v]) for v in range(g.n)] for u in range(g.n)]
    found = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if far[u][v] and far[v][u]:
                found.add(u + 1)
                found.add(v + 1)
    return _partition(g, found)


def boundary_matrix(g: Graph) -> tuple[BoundaryPartition, DissimilarityMatrix]:
    bp = boundary(g)
    return bp, submatrix(g, bp.boundary)


# -- family classification -----------------------------------------------------

class Family(enum.Enum):
    TREE = "Tree"
    BLOCK = "BlockGraph"
    ONE_BLOCK = "OneBlockGraph"
    UNICYCLIC = "Unicyclic"
    CYCLE = "Cycle"
    OTHER = "Other"


def biconnected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the blocks (Hopcroft-Tarjan, iterative)."""
    n = g.n
    adj = g._adj0
    if n == 1:
        return [frozenset({1})]
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    disc[0] = low[0] = timer
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                timer += 1
                disc[w] = low[w] = timer
                edge_stack.append((u, w))
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a + 1, b + 1))
                    if (a, b) == (parent, u):
                        break
                blocks.append(frozenset(comp))
    return blocks


def _induced_edge_count(g: Graph, vs: frozenset[int]) -> int:
    return sum(1 for u, v in g.edges if u in vs and v in vs)


def block_sizes(g: Graph) -> list[int]:
    """Orders of all blocks of g, non-increasing."""
    return sorted((len(b) for b in biconnected_components(g)), reverse=True)


def is_block_graph(g: Graph) -> bool:
    for b in biconnected_components(g):
        k = len(b)
        if _induced_edge_count(g, b) != k * (k - 1) // 2:
            return False
    return True


def _is_exterior_block(g: Graph, block: frozenset[int]) -> bool:
    """Some block vertex has a tree as its component in G - E(block)."""
    rest = [e for e in g.edges if not (e[0] in block and e[1] in block)]
    adj: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for u, v in rest:
        adj[u].append(v)
        adj[v].append(u)
    for x in block:
        comp = {x}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        m = sum(1 for u, v in rest if u in comp)
        if m == len(comp) - 1:
            return True
    return False


def nontrivial_blocks(g: Graph) -> list[frozenset[int]]:
    return [b for b in biconnected_components(g) if len(b) >= 3]


def classify_family(g: Graph) -> frozenset[Family]:
    fams = set()
    if g.m == g.n - 1:
        fams.add(Family.TREE)
    if g.m == g.n:
        fams.add(Family.UNICYCLIC)
        if all(len(a) == 2 for a in g._adj0):
            fams.add(Family.CYCLE)
    if is_block_graph(g):
        fams.add(Family.BLOCK)
        exterior = [b for b in nontrivial_blocks(g) if _is_exterior_block(g, b)]
        if len(exterior) == 1:
            fams.add(Family.ONE_BLOCK)
    if not fams:
        fams.add(Family.OTHER)
    return frozenset(fams)


def cycle_vertices(g: Graph) -> list[int]:
    """Vertices on the unique cycle of a unicyclic graph (leaf stripping)."""
    deg = [len(a) for a in g._adj0]
    removed = [False] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if removed[v]:
            continue
        removed[v] = True
        for w in g._adj0[v]:
            if not removed[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    return [v + 1 for v in range(g.n) if not removed[v]]


def boundary_fast(g: Graph, family: Family) -> BoundaryPartition:
    """Boundary from structure alone: leaves plus the family's degree rule."""
    if g.n < 2:
        raise DegenerateInput("boundary needs at least 2 vertices")
    fams = classify_family(g)
    if family is Family.ONE_BLOCK:
        family = Family.BLOCK
    if family not in fams or family not in (Family.TREE, Family.BLOCK, Family.UNICYCLIC):
        names = sorted(f.value for f in fams)
        raise FamilyMismatch(f"graph is {names}, not {family.value}")
    leaves = [v for v in g.vertices() if g.degree(v) == 1]
    if family is Family.TREE:
        return _partition(g, leaves)
    if family is Family.BLOCK:
        extra = [v for b in nontrivial_blocks(g) for v in b if g.degree(v) == len(b) - 1]
        return _partition(g, leaves + extra)
    extra = [v for v in cycle_vertices(g) if g.degree(v) == 2]
    return _partition(g, leaves + extra)


# -- resolving sets ------------------------------------------------------------

def is_strong_resolving(g: Graph, s: Iterable[int]) -> bool:
    """Every pair x, y has some v in s with x on a y-v geodesic or y on an x-v geodesic."""
    s0 = [v - 1 for v in set(s)]
    for v in s0:
        g._check_vertex(v + 1)
    if g.n >= 2 and not s0:
        return False
    d = g.distances
    for x, y in itertools.combinations(range(g.n), 2):
        dxy = d[x][y]
        if not any(d[y][v] == dxy + d[x][v] or d[x][v] == dxy + d[y][v] for v in s0):
            return False
    return True


def is_doubly_resolving(g: Graph, s: Iterable[int]) -> bool:
    """Every pair x, y has u, v in s with d(x,u)-d(y,u) != d(x,v)-d(y,v)."""
    s0 = [v - 1 for v in set(s)]
    for v in s0:
        g._check_vertex(v + 1)
    if g.n >= 2 and not s0:
        return False
    d = g.distances
    for x, y in itertools.combinations(range(g.n), 2):
        if len({d[x][v] - d[y][v] for v in s0}) < 2:
            return False
    return True


def is_resolving(g: Graph, s: Iterable[int]) -> bool:
    s0 = [v - 1 for v in set(s)]
    d = g.distances
    reps = {tuple(d[x][v] for v in s0) for x in range(g.n)}
    return len(reps) == g.n


# -- text formats --------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse "n m" followed by m lines "u v" (1-based)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise FormatError('first line must be "n m"')
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in (ln for ln in lines[1:] if len(ln) == 2)]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from None
    bad = [i + 2 for i, ln in enumerate(lines[1:]) if len(ln) != 2]
    if bad:
        raise FormatError(f"line {bad[0]}: expected two vertex ids")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except DisconnectedInput:
        raise
    except GraphboundError as exc:
        raise FormatError(str(exc)) from None


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, highlight: Iterable[int] = ()) -> str:
    """Graphviz source; vertices in ``highlight`` get ``style=filled``."""
    marked = set(highlight)
    out = ["graph G {"]
    for v in g.vertices():
        attr = ' [label="%d"%s]' % (v, ", style=filled" if v in marked else "")
        out.append(f"  {v}{attr};")
    for u, v in g.sorted_edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
