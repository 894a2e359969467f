"""Tait/projection graphs, exact spanning-tree counts, grid machinery.

Spanning trees are counted by a cofactor of the graph Laplacian with
fraction-free integer elimination; a brute-force enumerator covers the
small cases as an oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import bareiss_det
from ._numeric import DEFAULT_BITS, ln
from .embed import face_data
from .errors import DomainError
from .diagram import _dart_map


class PlanarMultigraph:
    """Undirected multigraph: ``n`` vertices 0..n-1, edge list with
    parallel edges and loops allowed."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        self.n = n
        self.edges = [tuple(e) for e in edges]
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")

    def is_connected(self):
        if self.n <= 1:
            return True
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u].append(v)
                adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def to_edge_list_text(self):
        return "\n".join(f"{u} {v}" for u, v in sorted(self.edges))

    @classmethod
    def from_edge_list_text(cls, text):
        edges = []
        n = 0
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            u, v = (int(x) for x in line.split())
            edges.append((u, v))
            n = max(n, u + 1, v + 1)
        return cls(n, edges)

    def __repr__(self):
        return f"PlanarMultigraph({self.n} vertices, {len(self.edges)} edges)"


def checkerboard_graph(diagram, color_class=0):
    """Checkerboard graph on the faces of one color class: a vertex per
    face of that class, an edge per crossing joining its two equal-colored
    corners.  Defined for any diagram; crossings with both corners in one
    face become loops (dropped later by the tree count)."""
    fd = face_data(diagram)
    verts = sorted(f for f in range(len(fd.faces)) if fd.colors[f] == color_class)
    pos = {f: i for i, f in enumerate(verts)}
    edges = []
    for ci in range(diagram.crossing_number):
        if fd.corner_color(ci, 0) == color_class:
            f1, f2 = fd.face_of_corner(ci, 0), fd.face_of_corner(ci, 2)
        else:
            f1, f2 = fd.face_of_corner(ci, 1), fd.face_of_corner(ci, 3)
        edges.append((pos[f1], pos[f2]))
    return PlanarMultigraph(len(verts), edges)


def tait_graph(diagram, dual=False):
    """Tait graph of an alternating diagram: vertex per shaded region,
    edge per crossing.  ``dual=True`` picks the other checkerboard class.

    Raises DomainError on non-alternating input, where the shading does
    not assign a consistent class to the under-strand corners.
    """
    if diagram.crossing_number == 0:
        raise DomainError("zero-crossing unknot has no Tait graph")
    fd = face_data(diagram)
    shade = fd.corner_color(0, 0)
    for ci in range(diagram.crossing_number):
        if fd.corner_color(ci, 0) != shade:
            raise DomainError("Tait sign consistency fails: diagram is not alternating")
    if dual:
        shade = 1 - shade
    return checkerboard_graph(diagram, shade)


def projection_graph(diagram):
    """The underlying 4-valent graph: vertices at crossings, an edge per arc."""
    edges = []
    for dlist in _dart_map(diagram.pd_tuples()).values():
        (c1, _), (c2, _) = dlist
        edges.append((c1, c2))
    return PlanarMultigraph(diagram.crossing_number, edges)


def spanning_tree_count(graph):
    """Exact tau(G) via a Laplacian cofactor (matrix-tree); loops dropped."""
    if not graph.is_connected():
        raise DomainError("spanning trees of a disconnected graph")
    n = graph.n
    if n <= 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    reduced = [row[:-1] for row in lap[:-1]]
    return bareiss_det(reduced)


def spanning_trees_bruteforce(graph, max_edges=10):
    """Oracle: enumerate edge subsets of size n-1 and count the spanning
    trees directly."""
    real_edges = [(u, v) for u, v in graph.edges if u != v]
    if len(real_edges) > max_edges:
        raise DomainError("brute-force spanning tree count capped")
    n = graph.n
    if n <= 1:
        return 1
    count = 0
    for subset in itertools.combinations(real_edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count


# ---------------------------------------------------------------------------
# grid subgraphs, Folner ratios, tree entropy


@dataclass(frozen=True)
class GridSubgraphSpec:
    """A finite induced subgraph of the infinite square grid, given by its
    vertex set."""

    cells: frozenset

    @classmethod
    def block(cls, m, n=None):
        """The m x n rectangular block (n defaults to m)."""
        if n is None:
            n = m
        if m < 1 or n < 1:
            raise DomainError("block dimensions must be positive")
        return cls(frozenset((i, j) for i in range(m) for j in range(n)))

    def __len__(self):
        return len(self.cells)

    def is_connected(self):
        if not self.cells:
            return False
        start = next(iter(self.cells))
        seen = {start}
        stack = [start]
        while stack:
            i, j = stack.pop()
            for v in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if v in self.cells and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(self.cells)

    def graph(self):
        verts = sorted(self.cells)
        pos = {v: i for i, v in enumerate(verts)}
        edges = []
        for i, j in verts:
            for v in ((i + 1, j), (i, j + 1)):
                if v in self.cells:
                    edges.append((pos[(i, j)], pos[v]))
        return PlanarMultigraph(len(verts), edges)


def folner_ratio(spec):
    """|boundary H| / |H| as an exact rational; the boundary is the set of
    vertices of H adjacent in the infinite grid to a vertex outside H."""
    if not spec.cells:
        raise DomainError("empty subgraph")
    boundary = 0
    for i, j in spec.cells:
        if any(v not in spec.cells
               for v in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1))):
            boundary += 1
    return Fraction(boundary, len(spec.cells))


def grid_graph(m, n=None):
    return GridSubgraphSpec.block(m, n).graph()


def tree_entropy_sequence(graphs, bits=DEFAULT_BITS):
    """[(vertex count, ln tau / vertices)] with tau exact and the log taken
    at high precision."""
    out = []
    for g in graphs:
        tau = spanning_tree_count(g)
        out.append((g.n, ln(tau, bits) / g.n))
    return out
