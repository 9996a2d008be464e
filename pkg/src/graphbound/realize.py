"""Deciders for "is this matrix the (boundary) distance matrix of a graph in
family X?".  Each returns a :class:`RecognitionReport` carrying either a
witness graph or the violation that sank the verdict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import GraphboundError, NotMetric, NotRealizable
from .graph import Family, Graph, bfs_distances, boundary, classify_family
from .matrix import (
    DissimilarityMatrix,
    det_exact,
    four_point_violation,
    triangle_violation,
    tree_det_formula,
)


@dataclass(frozen=True)
class Violation:
    reason: str
    cells: tuple[int, ...] = ()  # 1-based row indices
    detail: str = ""

    def __str__(self) -> str:
        parts = [self.reason]
        if self.cells:
            parts.append("(" + ",".join(map(str, self.cells)) + ")")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class RecognitionReport:
    verdict: bool
    family: str
    graph: Graph | None = None
    index_map: tuple[int, ...] | None = None  # row i -> vertex id
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.verdict

    def line(self) -> str:
        """One-line record "FAMILY verdict [reason]"."""
        out = f"{self.family} {str(self.verdict).lower()}"
        if self.violation is not None:
            out += f" {self.violation}"
        return out


def _fail(family: str, reason: str, cells: Sequence[int] = (), detail: str = "") -> RecognitionReport:
    return RecognitionReport(False, family, violation=Violation(reason, tuple(c + 1 for c in cells), detail))


def _require_metric(m: DissimilarityMatrix) -> None:
    bad = triangle_violation(m)
    if bad is not None:
        i, j, k = bad
        raise NotMetric(
            f"d({i + 1},{k + 1}) = {m[i, k]} > d({i + 1},{j + 1}) + d({j + 1},{k + 1}) = {m[i, j] + m[j, k]}"
        )


# -- distance matrices ---------------------------------------------------------

def realize_distance_matrix(m: DissimilarityMatrix, family: str = "distance") -> RecognitionReport:
    """Build the graph of distance-1 pairs and check its BFS distances reproduce m."""
    _require_metric(m)
    k = m.order
    adj = [[j for j in range(k) if m[i, j] == 1] for i in range(k)]
    for i in range(k):
        dist = bfs_distances(k, adj, i)
        for j in range(k):
            if dist[j] != m[i, j]:
                got = "unreachable" if dist[j] is None else str(dist[j])
                return _fail(family, "not-graphical", (i, j), f"entry {m[i, j]}, graph distance {got}")
    edges = frozenset((i + 1, j + 1) for i in range(k) for j in adj[i] if i < j)
    return RecognitionReport(True, family, Graph(k, edges), tuple(range(1, k + 1)))


def is_tree_distance_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    fam = "tree-dist"
    rep = realize_distance_matrix(m, fam)
    if not rep:
        return rep
    quad = four_point_violation(m)
    if quad is not None:
        return _fail(fam, "not-additive", quad)
    if m.order >= 2:
        det = det_exact(m)
        want = tree_det_formula(m.order)
        if det != want:
            return _fail(fam, "determinant", detail=f"{det} != {want}")
    assert Family.TREE in classify_family(rep.graph)
    return rep


def is_block_distance_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    fam = "block-dist"
    rep = realize_distance_matrix(m, fam)
    if not rep:
        return rep
    quad = four_point_violation(m)
    if quad is not None:
        return _fail(fam, "not-additive", quad)
    assert Family.BLOCK in classify_family(rep.graph)
    return rep


def _cycle_order(m: DissimilarityMatrix) -> list[int] | None:
    """Rows in cyclic order if the distance-1 pairs form one Hamiltonian cycle."""
    k = m.order
    adj = [[j for j in range(k) if m[i, j] == 1] for i in range(k)]
    if k < 3 or any(len(a) != 2 for a in adj):
        return None
    order = [0, adj[0][0]]
    while len(order) < k:
        a, b = adj[order[-1]]
        nxt = b if a == order[-2] else a
        if nxt == 0:
            return None
        order.append(nxt)
    if 0 not in adj[order[-1]]:
        return None
    return order


def is_cycle_distance_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    fam = "cycle"
    k = m.order
    order = _cycle_order(m)
    if order is None:
        return _fail(fam, "not-a-cycle", detail="distance-1 pairs do not form a single cycle")
    pos = {r: t for t, r in enumerate(order)}
    for i, j in itertools.combinations(range(k), 2):
        t = abs(pos[i] - pos[j])
        if m[i, j] != min(t, k - t):
            return _fail(fam, "not-a-cycle", (i, j), f"entry {m[i, j]}, cycle distance {min(t, k - t)}")
    edges = frozenset((i + 1, j + 1) for i in range(k) for j in range(i + 1, k) if m[i, j] == 1)
    return RecognitionReport(True, fam, Graph(k, edges), tuple(range(1, k + 1)))


def _unique_one_row(m: DissimilarityMatrix, alive: list[int]) -> int | None:
    for i in alive:
        if sum(1 for j in alive if m[i, j] == 1) == 1:
            return i
    return None


def is_unicyclic_distance_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    """Peel rows holding a single 1 (leaves) until a cycle matrix remains."""
    fam = "unicyclic-dist"
    _require_metric(m)
    alive = list(range(m.order))
    while True:
        i = _unique_one_row(m, alive)
        if i is None:
            break
        alive.remove(i)
    if len(alive) < 3:
        return _fail(fam, "no-cycle", detail=f"peeling left {len(alive)} row(s)")
    core = is_cycle_distance_matrix(m.submatrix(alive))
    if not core:
        return _fail(fam, "no-cycle", [alive[c - 1] for c in core.violation.cells], core.violation.detail)
    rep = realize_distance_matrix(m, fam)
    if not rep:
        return rep
    if rep.graph.m != rep.graph.n:
        return _fail(fam, "not-unicyclic", detail=f"{rep.graph.n} vertices, {rep.graph.m} edges")
    return rep


# -- boundary matrices ---------------------------------------------------------

def strict_triangle_violation(m: DissimilarityMatrix) -> tuple[int, int, int] | None:
    """Distinct i, j, k with b_ij >= b_ik + b_jk."""
    for i, j, k in itertools.permutations(range(m.order), 3):
        if i < j and m[i, j] >= m[i, k] + m[j, k]:
            return i, j, k
    return None


def parity_violation(m: DissimilarityMatrix) -> tuple[int, int, int] | None:
    for i, j, k in itertools.combinations(range(m.order), 3):
        if (m[i, j] + m[i, k] + m[j, k]) % 2:
            return i, j, k
    return None


def _path_report(fam: str, length: int) -> RecognitionReport:
    g = Graph(length + 1, frozenset((t, t + 1) for t in range(1, length + 1)))
    return RecognitionReport(True, fam, g, (1, length + 1))


def is_tree_boundary_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    """Leaf-distance matrix of a tree: additive, strict triangles, even triangle sums."""
    from .reconstruct import reconstruct_tree

    fam = "tree-boundary"
    if m.order == 1:
        return _fail(fam, "too-small", detail="a tree has at least 2 leaves")
    if m.order == 2:
        return _path_report(fam, m[0, 1])
    if triangle_violation(m) is not None:
        return _fail(fam, "not-metric", triangle_violation(m))
    quad = four_point_violation(m)
    if quad is not None:
        return _fail(fam, "not-additive", quad)
    tri = strict_triangle_violation(m)
    if tri is not None:
        return _fail(fam, "triangle-not-strict", tri)
    tri = parity_violation(m)
    if tri is not None:
        return _fail(fam, "odd-triangle", tri)
    res = reconstruct_tree(m)
    return RecognitionReport(True, fam, res.graph, res.index_map)


def is_block_boundary_matrix(m: DissimilarityMatrix) -> RecognitionReport:
    """Boundary matrix of a block graph: additive with strict triangles.

    Positives carry a witness when one of the explicit builders applies
    (3x3, tree leaf matrices, 1-block graphs); otherwise the verdict rests on
    the condition alone.
    """
    from .reconstruct import reconstruct_1block, reconstruct_from_3x3, reconstruct_tree

    fam = "block-boundary"
    if m.order == 1:
        return _fail(fam, "too-small", detail="boundary has at least 2 vertices")
    if m.order == 2:
        return _path_report(fam, m[0, 1])
    if triangle_violation(m) is not None:
        return _fail(fam, "not-metric", triangle_violation(m))
    quad = four_point_violation(m)
    if quad is not None:
        return _fail(fam, "not-additive", quad)
    tri = strict_triangle_violation(m)
    if tri is not None:
        return _fail(fam, "triangle-not-strict", tri)
    builders = [reconstruct_from_3x3] if m.order == 3 else []
    if parity_violation(m) is None:
        builders.append(reconstruct_tree)
    builders.append(reconstruct_1block)
    for build in builders:
        try:
            res = build(m)
        except GraphboundError:
            continue
        return RecognitionReport(True, fam, res.graph, res.index_map)
    return RecognitionReport(True, fam)


def certificate_matches(m: DissimilarityMatrix, g: Graph, index_map: Sequence[int]) -> bool:
    """Mapped vertices are exactly the boundary of g and their distances equal m."""
    if len(index_map) != m.order or len(set(index_map)) != m.order:
        return False
    if set(boundary(g).boundary) != set(index_map):
        return False
    return all(
        g.dist(index_map[i], index_map[j]) == m[i, j]
        for i in range(m.order)
        for j in range(m.order)
    )


def require_realizable_3x3(m: DissimilarityMatrix) -> None:
    if m.order != 3:
        raise NotRealizable(f"expected a 3x3 matrix, got order {m.order}")
    tri = strict_triangle_violation(m)
    if tri is not None:
        i, j, k = tri
        raise NotRealizable(f"b({i + 1},{j + 1}) >= b({i + 1},{k + 1}) + b({j + 1},{k + 1})")
