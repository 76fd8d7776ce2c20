"""Example clutters: Q6, finite projective and affine planes, vertex-cut clutters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import core
from .core import Clutter, make_clutter
from .errors import AxiomViolation, CapExceeded, DegenerateGraph, NotPrime


def q6() -> Clutter:
    return make_clutter("123456", ["135", "146", "236", "245"])


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q**0.5) + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalised homogeneous coordinates: first nonzero coordinate is 1."""
    pts = []
    for v in itertools.product(range(q), repeat=3):
        if any(v) and v[next(i for i in range(3) if v[i])] == 1:
            pts.append(v)
    return pts


def projective_plane(q: int) -> Clutter:
    """PG(2, q) for prime ``q`` as a clutter.

    Elements are the lines and each hyperedge is a point, given as the set of
    lines through it.  Labels are the coordinate digits of each line.
    """
    if not isinstance(q, int) or not _is_prime(q):
        raise NotPrime(f"{q} is not prime (only prime fields are supported)")
    pts = _projective_points(q)
    lines = pts  # self-dual coordinates
    sep = "" if q <= 10 else "."
    labels = [sep.join(map(str, ln)) for ln in lines]
    edges = []
    for p in pts:
        edges.append([labels[j] for j, ln in enumerate(lines)
                      if sum(a * b for a, b in zip(p, ln)) % q == 0])
    return make_clutter(labels, edges)


def fano() -> Clutter:
    return projective_plane(2)


def affine_plane_from(pp: Clutter, a) -> Clutter:
    """Delete one element (a line) from a projective plane."""
    ok, why = verify_projective_axioms(pp)
    if not ok:
        raise AxiomViolation(f"input is not a projective plane: {why}")
    return core.delete(pp, [a] if isinstance(a, str) else a)


def affine_plane(q: int) -> Clutter:
    pp = projective_plane(q)
    return affine_plane_from(pp, pp.ground[0])


def _pairs_in_edge(C: Clutter):
    for i, j in itertools.combinations(range(C.n), 2):
        pair = (1 << i) | (1 << j)
        yield i, j, sum(1 for e in C.edges if e & pair == pair)


def verify_projective_axioms(C: Clutter):
    """Check the three projective-plane axioms; returns ``(ok, violation)``."""
    for i, j, count in _pairs_in_edge(C):
        if count != 1:
            return False, f"axiom 1: elements {C.ground[i]},{C.ground[j]} lie in {count} hyperedges"
    for h, g in itertools.combinations(C.edges, 2):
        if (h & g).bit_count() != 1:
            return False, f"axiom 2: hyperedges {C.labels(h)} and {C.labels(g)} meet in {(h & g).bit_count()}"
    # four hyperedges (points), no element (line) in more than two of them
    for quad in itertools.combinations(C.edges, 4):
        if all((a & b & c) == 0 for a, b, c in itertools.combinations(quad, 3)):
            return True, None
    return False, "axiom 3: no four hyperedges in general position"


def verify_affine_axioms(C: Clutter):
    """Check the three affine-plane axioms; returns ``(ok, violation)``."""
    for h, g in itertools.combinations(C.edges, 2):
        if (h & g).bit_count() != 1:
            return False, f"axiom 1: hyperedges {C.labels(h)} and {C.labels(g)} meet in {(h & g).bit_count()}"
    together = [0] * C.n
    for e in C.edges:
        for i in core.ids_of(e):
            together[i] |= e
    for a in range(C.n):
        for h in C.edges:
            if h >> a & 1:
                continue
            apart = [b for b in core.ids_of(h) if not together[a] >> b & 1]
            if len(apart) != 1:
                return False, (f"axiom 2: element {C.ground[a]} and hyperedge {C.labels(h)} "
                               f"have {len(apart)} elements never sharing a hyperedge")
    for tri in itertools.combinations(C.edges, 3):
        if tri[0] & tri[1] & tri[2] == 0:
            return True, None
    return False, "axiom 3: every three hyperedges share an element"


# --- isomorphism -------------------------------------------------------------------


def isomorphic(C: Clutter, D: Clutter) -> bool:
    """Clutter isomorphism via the element/edge incidence graph."""
    import networkx as nx
    from networkx.algorithms import isomorphism

    if (C.n, len(C.edges)) != (D.n, len(D.edges)):
        return False
    if sorted(e.bit_count() for e in C.edges) != sorted(e.bit_count() for e in D.edges):
        return False

    def graph(K):
        g = nx.Graph()
        for i in range(K.n):
            g.add_node(("v", i), side=0)
        for k, e in enumerate(K.edges):
            g.add_node(("e", k), side=1)
            for i in core.ids_of(e):
                g.add_edge(("v", i), ("e", k))
        return g

    gm = isomorphism.GraphMatcher(graph(C), graph(D),
                                  node_match=lambda a, b: a["side"] == b["side"])
    return gm.is_isomorphic()


# --- graphs ------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset  # frozensets of two labels

    @classmethod
    def from_edges(cls, pairs, vertices=None) -> "Graph":
        es = set()
        for u, v in pairs:
            u, v = str(u), str(v)
            if u == v:
                raise DegenerateGraph(f"loop at {u}")
            es.add(frozenset((u, v)))
        verts = vertices if vertices is not None else sorted({x for e in es for x in e})
        return cls(tuple(str(v) for v in verts), frozenset(es))

    def neighbours(self, v) -> set:
        return {next(iter(e - {v})) for e in self.edges if v in e}

    def edge_label(self, e) -> str:
        u, v = sorted(e, key=self.vertices.index)
        return f"{u}-{v}"

    def sorted_edges(self) -> list:
        idx = self.vertices.index
        return sorted(self.edges, key=lambda e: sorted(idx(x) for x in e))


def parse_graph(text: str) -> Graph:
    pairs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DegenerateGraph(f"bad edge line: {line!r}")
        pairs.append(parts)
    return Graph.from_edges(pairs)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(n), 2), [str(i) for i in range(n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], [str(i) for i in range(n)])


def vertex_cut_clutter(G: Graph) -> Clutter:
    """One hyperedge per vertex: the set of edges incident with it, minimalized."""
    if not G.edges:
        raise DegenerateGraph("graph has no edges")
    for v in G.vertices:
        if not any(v in e for e in G.edges):
            raise DegenerateGraph(f"vertex {v} is isolated")
    es = G.sorted_edges()
    labels = [G.edge_label(e) for e in es]
    stars = [frozenset(labels[k] for k, e in enumerate(es) if v in e) for v in G.vertices]
    return make_clutter(labels, [sorted(s, key=labels.index) for s in core.minimalize(stars)])


def _connected(vertices, edges) -> bool:
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in edges:
            if v in e:
                (w,) = e - {v}
                if w in vertices and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return seen == vertices


def _has_perfect_matching(vertices, edges) -> bool:
    vertices = sorted(vertices)
    if not vertices:
        return True
    if len(vertices) % 2:
        return False
    v = vertices[0]
    rest = set(vertices[1:])
    for w in list(rest):
        if frozenset((v, w)) in edges:
            if _has_perfect_matching(rest - {w}, edges):
                return True
    return False


def is_three_connected(G: Graph) -> bool:
    V = G.vertices
    if len(V) < 4:
        return False
    for k in range(3):
        for cut in itertools.combinations(V, k):
            rest = set(V) - set(cut)
            es = [e for e in G.edges if not e & set(cut)]
            if not _connected(rest, es):
                return False
    return True


def is_brick(G: Graph, max_vertices: int = 12) -> bool:
    """3-connected and ``G - {u, v}`` has a perfect matching for every pair."""
    if len(G.vertices) > max_vertices:
        raise CapExceeded(f"brick check limited to {max_vertices} vertices")
    if len(G.vertices) < 4 or len(G.vertices) % 2:
        return False
    if not is_three_connected(G):
        return False
    for u, v in itertools.combinations(G.vertices, 2):
        if not _has_perfect_matching(set(G.vertices) - {u, v}, G.edges):
            return False
    return True
