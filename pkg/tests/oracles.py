"""Independent reference implementations used by the tests.

Nothing here imports the package's algorithms: distances, boundaries,
isomorphism and enumeration come from networkx or plain brute force, and
determinants from exact Fraction elimination.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from graphbound.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    label = {v: i + 1 for i, v in enumerate(sorted(h.nodes))}
    return Graph(h.number_of_nodes(), frozenset(tuple(sorted((label[u], label[v]))) for u, v in h.edges))


def nx_distances(h: nx.Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(h))


def mmd_boundary(h: nx.Graph) -> list[int]:
    """Boundary straight from the definition: members of mutually maximally distant pairs."""
    d = nx_distances(h)

    def boundary_of(v, u):
        return all(d[u][w] <= d[u][v] for w in h[v])

    out = set()
    for u, v in itertools.combinations(h.nodes, 2):
        if boundary_of(v, u) and boundary_of(u, v):
            out.update((u, v))
    return sorted(out)


def boundary_rows(h: nx.Graph) -> tuple[list[int], list[list[int]]]:
    b = mmd_boundary(h)
    d = nx_distances(h)
    return b, [[d[x][y] for y in b] for x in b]


def perm_equivalent(a, b) -> bool:
    """Brute force: is b a simultaneous row/column permutation of a?"""
    k = len(a)
    if len(b) != k or sorted(map(sorted, a)) != sorted(map(sorted, b)):
        return False
    return any(
        all(a[i][j] == b[p[i]][p[j]] for i in range(k) for j in range(k))
        for p in itertools.permutations(range(k))
    )


def fraction_det(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    assert det.denominator == 1
    return int(det)


def four_point_ok(rows) -> bool:
    """Sorted pair sums over every quadruple: the two largest coincide."""
    for i, j, h, k in itertools.combinations(range(len(rows)), 4):
        s = sorted((rows[i][j] + rows[h][k], rows[i][h] + rows[j][k], rows[i][k] + rows[j][h]))
        if s[1] != s[2]:
            return False
    return True


@lru_cache(maxsize=None)
def atlas_connected(n: int) -> tuple[nx.Graph, ...]:
    """All connected graphs of order n (n <= 7) from the networkx atlas."""
    assert 1 <= n <= 7
    return tuple(h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h))


def labeled_connected_classes(n: int) -> int:
    """Isomorphism classes of connected graphs by brute force over all labeled graphs."""
    pairs = list(itertools.combinations(range(n), 2))
    reps: list[nx.Graph] = []
    for mask in range(1 << len(pairs)):
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(p for b, p in enumerate(pairs) if mask >> b & 1)
        if not nx.is_connected(h):
            continue
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


def nx_is_block(h: nx.Graph) -> bool:
    for comp in nx.biconnected_components(h):
        k = len(comp)
        if h.subgraph(comp).number_of_edges() != k * (k - 1) // 2:
            return False
    return True


def nx_block_sizes(h: nx.Graph) -> list[int]:
    return sorted((len(c) for c in nx.biconnected_components(h)), reverse=True)


def nx_is_unicyclic(h: nx.Graph) -> bool:
    return nx.is_connected(h) and h.number_of_edges() == h.number_of_nodes()


def nx_is_one_block(h: nx.Graph) -> bool:
    return nx_is_block(h) and sum(1 for c in nx.biconnected_components(h) if len(c) >= 3) == 1


def nx_trees(n: int) -> list[nx.Graph]:
    if n == 1:
        h = nx.Graph()
        h.add_node(0)
        return [h]
    return list(nx.nonisomorphic_trees(n))


# OEIS A000081 (rooted trees), offset 1
ROOTED_TREES = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842]
# OEIS A001429 (connected unicyclic graphs), n = 3..11
UNICYCLIC_COUNTS = {3: 1, 4: 2, 5: 5, 6: 13, 7: 33, 8: 89, 9: 240, 10: 657, 11: 1806}
# OEIS A035053 (connected block graphs), n = 1..8
BLOCK_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 9, 6: 22, 7: 59, 8: 165}


def one_block_count(n: int) -> int:
    """Multisets of h >= 3 rooted trees with n vertices in total, summed over h."""
    # items: (size, type index); multiset count via DP with multiplicities
    sizes = [s for s in range(1, n + 1) for _ in range(ROOTED_TREES[s - 1])]
    # dp[h][w] = multisets of h items with total weight w
    dp = [[0] * (n + 1) for _ in range(n + 1)]
    dp[0][0] = 1
    for s in sizes:
        for h in range(n, 0, -1):
            for w in range(n, s - 1, -1):
                c = 1
                while c <= h and c * s <= w:
                    dp[h][w] += dp[h - c][w - c * s]
                    c += 1
    return sum(dp[h][n] for h in range(3, n + 1))


def is_spider3(h: nx.Graph) -> bool:
    """Subdivision of K_{1,3}."""
    degs = sorted(d for _, d in h.degree)
    return nx.is_tree(h) and degs.count(1) == 3 and degs.count(3) == 1 and max(degs) == 3


def is_triangle_with_paths(h: nx.Graph) -> bool:
    """K_3 with at most one path (possibly of length 0) hanging from each corner."""
    if not nx_is_unicyclic(h):
        return False
    cyc = set(nx.cycle_basis(h)[0])
    return len(cyc) == 3 and all(h.degree(v) <= (3 if v in cyc else 2) for v in h)
