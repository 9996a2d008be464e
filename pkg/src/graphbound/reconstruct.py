"""Rebuilding graphs from boundary distance matrices.

* :func:`reconstruct_tree` grows a tree leaf by leaf from its leaf-distance
  matrix.
* :func:`reconstruct_1block` and :func:`reconstruct_unicyclic` repeatedly
  prune the most eccentric leaf (with its siblings), replacing it by its
  parent's row, until a clique or a cycle remains; the pruned leaves are
  then re-attached in reverse order.
* :func:`recognize_unicyclic_boundary` runs the same pruning and only
  reports whether it bottoms out in a cycle.

Matrix rows are 0-based in this API. Reconstructed graphs number the vertex
of input row ``i`` as ``i + 1``; every other vertex comes after.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    GraphboundError,
    InvalidLeafMatrix,
    NotOneBlock,
    NotUnicyclicBoundary,
    TooSmall,
)
from .graph import BoundaryPartition, Family, Graph, Label, classify_family
from .matrix import DissimilarityMatrix
from .realize import (
    _cycle_order,
    certificate_matches,
    is_cycle_distance_matrix,
    require_realizable_3x3,
)


@dataclass(frozen=True)
class PeelStep:
    """One pruning step.

    ``removed`` and ``parent`` are node ids: ids below the input order are
    input rows, larger ids are parent rows inserted by earlier steps.
    ``parent_row`` lists the parent's distances to ``survivors``.
    """

    removed: tuple[int, ...]
    parent: int
    parent_row: tuple[int, ...]
    survivors: tuple[int, ...]
    depth: int
    merged: bool = False

    def describe(self, order: int) -> str:
        def name(x: int) -> str:
            return f"r{x + 1}" if x < order else f"p{x - order + 1}"

        removed = ",".join(name(x) for x in self.removed)
        row = " ".join(f"{name(w)}={d}" for w, d in zip(self.survivors, self.parent_row))
        how = " (merged)" if self.merged else ""
        return f"depth {self.depth}: remove {removed} -> parent {name(self.parent)}{how}: {row}"


@dataclass(frozen=True)
class ReconstructionResult:
    graph: Graph
    index_map: tuple[int, ...]
    steps: tuple[PeelStep, ...] = field(default=(), compare=False)
    # peel node id -> vertex of ``graph`` (only set by the peeling reconstructors)
    node_vertex: dict[int, int] = field(default_factory=dict, compare=False)

    def trace(self) -> list[str]:
        return [s.describe(len(self.index_map)) for s in self.steps]


def _renumber(n: int, index_nodes: Sequence[int]) -> dict[int, int]:
    ids = {v: i + 1 for i, v in enumerate(index_nodes)}
    nxt = len(index_nodes) + 1
    for v in range(n):
        if v not in ids:
            ids[v] = nxt
            nxt += 1
    return ids


def _finish(n: int, edges: Sequence[tuple[int, int]], index_nodes: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Renumber so that index_nodes[i] becomes vertex i + 1."""
    ids = _renumber(n, index_nodes)
    g = Graph(n, frozenset((ids[u], ids[v]) for u, v in edges))
    return g, tuple(range(1, len(index_nodes) + 1))


# -- 3x3 -----------------------------------------------------------------------

def reconstruct_from_3x3(m: DissimilarityMatrix) -> ReconstructionResult:
    """Spider (even triangle sum) or triangle with three hanging paths (odd)."""
    require_realizable_3x3(m)
    a, b, c = m[0, 1], m[0, 2], m[1, 2]
    odd = (a + b + c) % 2
    # leg at row i: half of (sum of its two entries - the opposite entry), minus 1 if odd
    legs = [(a + b - c - odd) // 2, (a + c - b - odd) // 2, (b + c - a - odd) // 2]
    edges: list[tuple[int, int]] = []
    if odd:
        hubs = [0, 1, 2]
        edges += [(0, 1), (0, 2), (1, 2)]
        n = 3
    else:
        hubs = [0, 0, 0]
        n = 1
    ends = []
    for hub, length in zip(hubs, legs):
        prev = hub
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
        ends.append(prev)
    g, idx = _finish(n, edges, ends)
    return ReconstructionResult(g, idx)


# -- trees ---------------------------------------------------------------------

def reconstruct_tree(m: DissimilarityMatrix) -> ReconstructionResult:
    """Grow the tree one leaf at a time.

    Leaf k hangs from the unique vertex u whose distance vector to the leaves
    placed so far is leaf k's vector minus a constant a >= 1, via a new path
    of length a.
    """
    k = m.order
    if k < 2:
        raise InvalidLeafMatrix("a leaf matrix has order >= 2")
    adj: list[list[int]] = [[] for _ in range(k)]
    # labels[v][i] = distance from vertex v to leaf i
    labels: list[list[int]] = [[] for _ in range(k)]

    def new_vertex() -> int:
        adj.append([])
        labels.append([])
        return len(adj) - 1

    def link(u: int, v: int) -> None:
        adj[u].append(v)
        adj[v].append(u)

    def label_from(leaf: int) -> None:
        dist = {leaf: 0}
        queue = deque([leaf])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        for v, dv in dist.items():
            labels[v].append(dv)

    prev = 0
    for _ in range(m[0, 1] - 1):
        v = new_vertex()
        link(prev, v)
        prev = v
    link(prev, 1)
    label_from(0)
    label_from(1)

    for leaf in range(2, k):
        target = [m[leaf, i] for i in range(leaf)]
        found = []
        for u in range(len(adj)):
            if u < k and u >= leaf:
                continue
            diffs = {t - x for t, x in zip(target, labels[u])}
            if len(diffs) == 1:
                a = diffs.pop()
                if a >= 1:
                    found.append((u, a))
        if len(found) != 1:
            what = "no" if not found else "several"
            raise InvalidLeafMatrix(f"{what} attachment point for row {leaf + 1}")
        u, a = found[0]
        if len(adj[u]) < 2:
            raise InvalidLeafMatrix(f"row {leaf + 1} would hang from leaf {u + 1}")
        prev = u
        for t in range(1, a):
            v = new_vertex()
            link(prev, v)
            labels[v] = [x + t for x in labels[u]]
            prev = v
        link(prev, leaf)
        labels[leaf] = [x + a for x in labels[u]]
        label_from(leaf)

    edges = [(u, v) for u in range(len(adj)) for v in adj[u] if u < v]
    g, idx = _finish(len(adj), edges, list(range(k)))
    if not certificate_matches(m, g, idx):
        raise InvalidLeafMatrix("rebuilt tree does not reproduce the matrix")
    return ReconstructionResult(g, idx)


# -- leaf discrimination and siblings ------------------------------------------

def leaf_gap(m: DissimilarityMatrix, u: int) -> int | None:
    """min over pairs w1 != w2 (both != u) of d(w1,u) + d(u,w2) - d(w1,w2)."""
    others = [w for w in range(m.order) if w != u]
    return min(
        (m[w1, u] + m[u, w2] - m[w1, w2] for w1, w2 in itertools.combinations(others, 2)),
        default=None,
    )


def discriminate_leaves(m: DissimilarityMatrix, family: str = "block") -> BoundaryPartition:
    """Label each row Leaf (every gap >= 2) or NonLeafBoundary (some gap <= 1).

    ``family`` is "block" or "unicyclic"; both use the same rule. The
    partition's ``boundary`` holds 0-based row indices.
    """
    if family not in ("block", "unicyclic"):
        raise GraphboundError(f"family must be 'block' or 'unicyclic', got {family!r}")
    if m.order < 3:
        raise TooSmall(f"leaf discrimination needs order >= 3, got {m.order}")
    labels = tuple(Label.LEAF if leaf_gap(m, u) >= 2 else Label.NON_LEAF for u in range(m.order))
    return BoundaryPartition(tuple(range(m.order)), labels)


def detect_siblings(m: DissimilarityMatrix, leaves: Sequence[int], v: int) -> set[int]:
    """Leaf rows at distance 2 from v that agree with v everywhere else."""
    return {
        u
        for u in leaves
        if u != v
        and m[u, v] == 2
        and all(m[u, w] == m[v, w] for w in range(m.order) if w != u and w != v)
    }


# -- pruning engine ------------------------------------------------------------

class _Stuck(Exception):
    pass


@dataclass
class _PeelState:
    nodes: list[int]
    dist: dict[int, dict[int, int]]
    next_id: int
    steps: list[PeelStep] = field(default_factory=list)

    def matrix(self) -> DissimilarityMatrix:
        return DissimilarityMatrix(tuple(tuple(self.dist[a][b] for b in self.nodes) for a in self.nodes))


def _peel_once(state: _PeelState, cur: DissimilarityMatrix, family: str) -> bool:
    """Prune the most eccentric leaf; False when there is no leaf to prune."""
    if cur.order < 3:
        raise _Stuck(f"only {cur.order} row(s) left")
    part = discriminate_leaves(cur, family)
    leaves = [i for i, lab in zip(part.boundary, part.labels) if lab is Label.LEAF]
    if not leaves:
        return False
    v = max(leaves, key=lambda i: (cur.eccentricity(i), -i))
    sibs = detect_siblings(cur, leaves, v)
    removed_pos = sorted({v} | sibs)
    keep_pos = [i for i in range(cur.order) if i not in sibs and i != v]
    nodes = state.nodes
    vnode = nodes[v]
    row = [cur[v, i] - 1 for i in keep_pos]
    if any(x < 0 for x in row):
        raise _Stuck("parent row would have a negative entry")
    zeros = [i for i, x in zip(keep_pos, row) if x == 0]
    survivors = tuple(nodes[i] for i in keep_pos)
    if zeros:
        # parent is an existing row
        p = zeros[0]
        if len(zeros) > 1 or any(cur[p, i] != x for i, x in zip(keep_pos, row)):
            raise _Stuck(f"parent of row {vnode + 1} clashes with an existing row")
        parent = nodes[p]
        state.nodes = list(survivors)
        merged = True
    else:
        parent = state.next_id
        state.next_id += 1
        state.dist[parent] = {parent: 0}
        for w, x in zip(survivors, row):
            state.dist[parent][w] = x
            state.dist[w][parent] = x
        # parent takes v's place in the row order
        state.nodes = [parent if i == v else nodes[i] for i in range(cur.order) if i == v or i in keep_pos]
        merged = False
    state.steps.append(
        PeelStep(tuple(nodes[i] for i in removed_pos), parent, tuple(row), survivors, len(state.steps), merged)
    )
    return True


def _initial_state(m: DissimilarityMatrix) -> _PeelState:
    k = m.order
    return _PeelState(list(range(k)), {i: {j: m[i, j] for j in range(k)} for i in range(k)}, k)


def _is_clique(m: DissimilarityMatrix) -> bool:
    return m.order >= 3 and all(x == 1 for i, r in enumerate(m.rows) for j, x in enumerate(r) if i != j)


def _rebuild(
    m: DissimilarityMatrix,
    state: _PeelState,
    base_edges: Callable[[DissimilarityMatrix], list[tuple[int, int]]],
) -> ReconstructionResult:
    """Base graph on the surviving rows, then re-attach pruned leaves in reverse."""
    k = m.order
    vid: dict[int, int] = {}

    def vertex(node: int) -> int:
        if node not in vid:
            vid[node] = len(vid)
        return vid[node]

    cur = state.matrix()
    edges = [(vertex(state.nodes[i]), vertex(state.nodes[j])) for i, j in base_edges(cur)]
    for node in state.nodes:
        vertex(node)
    for step in reversed(state.steps):
        pv = vid[step.parent]
        edges.extend((pv, vertex(r)) for r in step.removed)
    index_nodes = [vid[i] for i in range(k)]
    g, idx = _finish(len(vid), edges, index_nodes)
    ids = _renumber(len(vid), index_nodes)
    return ReconstructionResult(g, idx, tuple(state.steps), {node: ids[v] for node, v in vid.items()})


def _clique_edges(cur: DissimilarityMatrix) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(cur.order), 2))


def _cycle_edges(cur: DissimilarityMatrix) -> list[tuple[int, int]]:
    order = _cycle_order(cur)
    return [(order[t], order[(t + 1) % len(order)]) for t in range(len(order))]


def reconstruct_1block(m: DissimilarityMatrix) -> ReconstructionResult:
    """Rebuild a graph made of one clique with trees attached."""
    state = _initial_state(m)
    try:
        while not _is_clique(state.matrix()):
            if not _peel_once(state, state.matrix(), "block"):
                raise _Stuck("no leaf to prune and the rows do not form a clique")
    except (_Stuck, TooSmall) as exc:
        raise NotOneBlock(str(exc)) from None
    res = _rebuild(m, state, _clique_edges)
    if Family.ONE_BLOCK not in classify_family(res.graph) or not certificate_matches(m, res.graph, res.index_map):
        raise NotOneBlock("rebuilt graph does not reproduce the matrix")
    return res


def _peel_to_cycle(m: DissimilarityMatrix) -> _PeelState:
    state = _initial_state(m)
    while True:
        cur = state.matrix()
        if is_cycle_distance_matrix(cur):
            return state
        if not _peel_once(state, cur, "unicyclic"):
            raise _Stuck("no leaf to prune and the rows do not form a cycle")


def recognize_unicyclic_boundary(m: DissimilarityMatrix) -> bool:
    """True iff pruning leaves bottoms out in the distance matrix of a cycle."""
    try:
        _peel_to_cycle(m)
    except (_Stuck, GraphboundError):
        return False
    return True


def reconstruct_unicyclic(m: DissimilarityMatrix) -> ReconstructionResult:
    try:
        state = _peel_to_cycle(m)
    except (_Stuck, GraphboundError) as exc:
        raise NotUnicyclicBoundary(str(exc)) from None
    res = _rebuild(m, state, _cycle_edges)
    if Family.UNICYCLIC not in classify_family(res.graph) or not certificate_matches(m, res.graph, res.index_map):
        raise NotUnicyclicBoundary("rebuilt graph does not reproduce the matrix")
    return res
