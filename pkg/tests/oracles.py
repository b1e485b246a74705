"""Hand-rolled reference implementations used only to cross-check results.

Everything here is written independently of the package internals:
brute-force cell enumeration for grid counts, a dense left-to-right
matrix reduction for persistence, exhaustive V-path walks for gradient
fields, and DFS component counting for graph Betti numbers.
"""

from itertools import permutations


def cell_complex_2d(n1, n2):
    """Edges and triangles of the diagonal-split grid, one cell at a time."""
    def vid(i, j):
        return i + n1 * j

    edges, triangles = set(), set()
    for j in range(n2 - 1):
        for i in range(n1 - 1):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i, j + 1), vid(i + 1, j + 1)
            for tri in ((a, b, d), (a, c, d)):
                triangles.add(tuple(sorted(tri)))
                for u in tri:
                    for v in tri:
                        if u < v:
                            edges.add((u, v))
    return edges, triangles


def cell_complex_3d(n1, n2, n3):
    """Faces of the six tetrahedra per cube, deduplicated."""
    def vid(i, j, k):
        return i + n1 * (j + n2 * k)

    edges, triangles = set(), set()
    for k in range(n3 - 1):
        for j in range(n2 - 1):
            for i in range(n1 - 1):
                for perm in permutations(range(3)):
                    p = [i, j, k]
                    chain = [vid(*p)]
                    for axis in perm:
                        p = list(p)
                        p[axis] += 1
                        chain.append(vid(*p))
                    for a in range(4):
                        for b in range(a + 1, 4):
                            u, v = sorted((chain[a], chain[b]))
                            edges.add((u, v))
                            for c in range(b + 1, 4):
                                triangles.add(tuple(sorted((chain[a], chain[b], chain[c]))))
    return edges, triangles


def dense_reduction_pairs(columns):
    """Plain left-to-right reduction of position-indexed Z2 columns.

    ``columns[j]`` is the set of face positions of the simplex at
    position j.  Returns (pairs, essential) as sets of positions.
    """
    cols = [set(c) for c in columns]
    low_of = {}
    for j in range(len(cols)):
        while cols[j]:
            low = max(cols[j])
            if low not in low_of:
                low_of[low] = j
                break
            cols[j] ^= cols[low_of[low]]
    pairs = {(low, j) for low, j in low_of.items()}
    involved = {p for pair in pairs for p in pair}
    essential = set(range(len(cols))) - involved
    return pairs, essential


def boundary_columns(filtration):
    """Position-indexed boundary columns straight from the complex tables."""
    cx = filtration.complex
    cols = [set() for _ in range(filtration.size)]
    for e in range(cx.n_edges):
        u, v = cx.edges[e]
        cols[int(filtration.edge_positions[e])] = {
            int(filtration.vertex_positions[u]),
            int(filtration.vertex_positions[v]),
        }
    for t in range(cx.n_triangles):
        cols[int(filtration.triangle_positions[t])] = {
            int(filtration.edge_positions[e]) for e in cx.tri_edges[t]
        }
    return cols


def has_cyclic_vpath(vertex_to_edge, edge_endpoints):
    """Exhaustively walk from every vertex looking for a repeated one."""
    for start in range(len(vertex_to_edge)):
        seen = {start}
        cur = start
        while True:
            e = vertex_to_edge[cur]
            if e < 0:
                break
            u, v = edge_endpoints[e]
            cur = v if u == cur else u
            if cur in seen:
                return True
            seen.add(cur)
    return False


def graph_betti1(vertex_ids, edge_pairs):
    """|E| - |V| + #components via DFS over an adjacency dict."""
    vertex_ids = [int(v) for v in vertex_ids]
    adjacency = {v: [] for v in vertex_ids}
    for u, v in edge_pairs:
        adjacency[int(u)].append(int(v))
        adjacency[int(v)].append(int(u))
    seen = set()
    components = 0
    for v in vertex_ids:
        if v in seen:
            continue
        components += 1
        stack = [v]
        seen.add(v)
        while stack:
            cur = stack.pop()
            for nb in adjacency[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return len(list(edge_pairs)) - len(vertex_ids) + components
