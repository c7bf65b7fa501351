"""Tetrahedral graph construction, tight-component decomposition and the
component colouring of a 3-graph whose every edge extends to a tetrahedron.

Two edges of a k-graph are tightly connected iff they are joined by a chain
of edges in which consecutive ones share k-1 vertices: consecutive windows
of a tight walk share k-1 vertices, and conversely two edges sharing k-1
vertices are joined by a tight walk of length k+1.  The decomposition below
computes the closure of that share-(k-1) relation with a union-find; the
equivalence with walk reachability is cross-checked against a BFS oracle in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import (
    FourGraph,
    ThreeGraph,
    _UniformGraph,
    bits,
    rank_pair,
    rank_subset,
    rank_triple,
)


@dataclass(frozen=True)
class TightLabeling:
    """Edge -> tight-component map for a k-graph.

    Component ids are 0-based and contiguous, canonicalised by first
    appearance in edge-rank order.
    """

    host_arity: int
    component_of_edge: dict[int, int]
    component_count: int

    def to_json(self) -> dict:
        return {
            "arity": self.host_arity,
            "components": self.component_count,
            "edges": sorted([r, c] for r, c in self.component_of_edge.items()),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TightLabeling":
        return cls(
            host_arity=int(obj["arity"]),
            component_of_edge={int(r): int(c) for r, c in obj["edges"]},
            component_count=int(obj["components"]),
        )


class _UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def tight_components(G: _UniformGraph) -> TightLabeling:
    """Decompose the edges of a 2/3/4-graph into tight components.

    Edges sharing arity-1 vertices are merged; all edges containing a fixed
    (arity-1)-subset pairwise share it, so it suffices to union each edge
    with the first-seen edge of each of its (arity-1)-subsets.
    """
    k = G.ARITY
    edges = G.edge_tuples()
    uf = _UnionFind(len(edges))
    first_with_subset: dict[int, int] = {}
    for idx, e in enumerate(edges):
        for skip in range(k):
            sub = e[:skip] + e[skip + 1:]
            r = rank_subset(sub) if k > 2 else sub[0]
            prev = first_with_subset.get(r)
            if prev is None:
                first_with_subset[r] = idx
            else:
                uf.union(idx, prev)
    comp_of: dict[int, int] = {}
    root_id: dict[int, int] = {}
    ranks = G.edge_ranks
    for idx in range(len(edges)):
        root = uf.find(idx)
        cid = root_id.setdefault(root, len(root_id))
        comp_of[int(ranks[idx])] = cid
    return TightLabeling(k, comp_of, len(root_id))


def is_tightly_connected(G: _UniformGraph) -> bool:
    """True iff G has at least one edge and a single tight component."""
    if G.edge_count == 0:
        return False
    return tight_components(G).component_count == 1


def tetrahedral_graph(H: ThreeGraph) -> FourGraph:
    """4-graph whose edges are the 4-sets inducing a tetrahedron in H.

    For each edge {a,b,c} the completions are the common neighbours of its
    three pairs; restricting to d > c makes every tetrahedron appear exactly
    once, so the result does not depend on iteration order.
    """
    if H.n < 4:
        raise ValueError(f"tetrahedral graph needs n >= 4, got {H.n}")
    from .hypergraph import _C4  # binomial tail of the quadruple rank

    quad_ranks = []
    ranks = H.edge_ranks
    tuples = H.edge_tuples()
    for i in range(len(tuples)):
        a, b, c = tuples[i]
        cand = (H.pair_mask(a, b) & H.pair_mask(a, c) & H.pair_mask(b, c)) >> (c + 1)
        r3 = int(ranks[i])
        base = c + 1
        while cand:
            low = cand & -cand
            d = base + low.bit_length() - 1
            quad_ranks.append(r3 + _C4[d])
            cand ^= low
    return FourGraph.from_ranks(H.n, quad_ranks)


def tetra_degree(H: ThreeGraph, a: int, b: int, c: int) -> int:
    """Number of tetrahedra of H containing the edge {a, b, c}."""
    return (H.pair_mask(a, b) & H.pair_mask(a, c) & H.pair_mask(b, c)).bit_count()


class EdgeNotInTetrahedron(ValueError):
    """Raised when some edge of H extends to no tetrahedron, so the
    component colouring is undefined."""

    def __init__(self, edge: tuple[int, int, int]):
        self.edge = edge
        super().__init__(f"edge {edge} lies in no tetrahedron; colouring undefined")


def _quad_rank_with(a: int, b: int, c: int, d: int) -> int:
    # rank of the sorted 4-set {a,b,c,d} given a < b < c and d arbitrary
    if d > c:
        return rank_subset((a, b, c, d))
    if d > b:
        return rank_subset((a, b, d, c))
    if d > a:
        return rank_subset((a, d, b, c))
    return rank_subset((d, a, b, c))


class ComponentColouring:
    """Edge colouring of a 3-graph by tight components of its tetrahedral
    graph.

    Defined only when every edge lies in at least one tetrahedron; all
    tetrahedra through a fixed edge share three vertices, hence lie in one
    tight component, so the colour of an edge is well defined (asserted over
    every containing tetrahedron during construction).
    """

    def __init__(self, base: ThreeGraph, tetra: FourGraph,
                 tetra_labeling: TightLabeling, colour_of_edge: dict[int, int]):
        self.base = base
        self.tetra = tetra
        self.tetra_labeling = tetra_labeling
        self.colour_of_edge = colour_of_edge
        vertex_colours = [set() for _ in range(base.n)]
        pair_colours: dict[int, set[int]] = {}
        for e, r in zip(base.edge_tuples(), base.edge_ranks):
            col = colour_of_edge[int(r)]
            a, b, c = e
            vertex_colours[a].add(col)
            vertex_colours[b].add(col)
            vertex_colours[c].add(col)
            for p in (rank_pair(a, b), rank_pair(a, c), rank_pair(b, c)):
                pair_colours.setdefault(p, set()).add(col)
        self._vertex_colours = tuple(frozenset(s) for s in vertex_colours)
        self._pair_colours = {p: frozenset(s) for p, s in pair_colours.items()}
        self._coloured_pair_masks: dict[tuple[int, int], int] = {}
        self._delta2: int | None = None

    # -- lookups ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def component_count(self) -> int:
        return self.tetra_labeling.component_count

    def colour_of(self, a: int, b: int, c: int) -> int:
        return self.colour_of_edge[rank_triple(*sorted((a, b, c)))]

    def colours_at(self, v: int) -> frozenset[int]:
        return self._vertex_colours[v]

    def colours_of_pair(self, u: int, v: int) -> frozenset[int]:
        if u > v:
            u, v = v, u
        return self._pair_colours.get(rank_pair(u, v), frozenset())

    def min_codegree(self) -> int:
        if self._delta2 is None:
            from .hypergraph import min_codegree
            self._delta2 = min_codegree(self.base)
        return self._delta2

    def coloured_pair_mask(self, x: int, y: int, colour: int) -> int:
        """Bitmask of z with {x, y, z} an edge of colour ``colour``."""
        if x > y:
            x, y = y, x
        key = (rank_pair(x, y), colour)
        cached = self._coloured_pair_masks.get(key)
        if cached is not None:
            return cached
        mask = 0
        for z in bits(self.base.pair_mask(x, y)):
            if self.colour_of(x, y, z) == colour:
                mask |= 1 << z
        self._coloured_pair_masks[key] = mask
        return mask

    def spanning_ids(self) -> frozenset[int]:
        """Components whose edges touch every vertex."""
        if self.n == 0:
            return frozenset()
        out = self._vertex_colours[0]
        for s in self._vertex_colours[1:]:
            out = out & s
        return out

    def two_colour_roles(self) -> tuple[int, int] | None:
        """With exactly two components, (spanning id, other id); else None.

        Ties break to the lowest spanning id; if neither spans, the lowest
        id takes the first role.
        """
        if self.component_count != 2:
            return None
        spanning = sorted(self.spanning_ids())
        first = spanning[0] if spanning else 0
        return (first, 1 - first)

    def to_json(self) -> dict:
        return {
            "arity": 3,
            "components": self.component_count,
            "edges": sorted([r, c] for r, c in self.colour_of_edge.items()),
        }


def component_colouring(H: ThreeGraph) -> ComponentColouring:
    """Colour every edge of H by the tight component of T(H) holding its
    tetrahedra.

    Raises:
        EdgeNotInTetrahedron: naming a witness edge that extends to no
            tetrahedron.  (Minimum positive codegree above 2n/3 is a
            sufficient condition for the colouring to exist.)
    """
    tetra = tetrahedral_graph(H)
    labeling = tight_components(tetra)
    comp = labeling.component_of_edge
    colour: dict[int, int] = {}
    for e, r in zip(H.edge_tuples(), H.edge_ranks):
        a, b, c = e
        cand = H.pair_mask(a, b) & H.pair_mask(a, c) & H.pair_mask(b, c)
        if cand == 0:
            raise EdgeNotInTetrahedron(e)
        seen = {comp[_quad_rank_with(a, b, c, d)] for d in bits(cand)}
        assert len(seen) == 1, f"edge {e} meets tetrahedra in several components"
        colour[int(r)] = next(iter(seen))
    return ComponentColouring(H, tetra, labeling, colour)


def spanning_components(pc: ComponentColouring) -> frozenset[int]:
    """Ids of components with an edge at every vertex."""
    return pc.spanning_ids()
