"""Exact k-uniform hypergraphs (k in {2, 3, 4}) on dense integer vertices.

Vertices are 0..n-1.  Edges are stored as membership flags indexed by the
colexicographic rank of the sorted vertex tuple; rank/unrank are pure
functions of the tuple and do not depend on n.  Vertex sets travel as
Python-int bitmasks so that the heavy neighbourhood scans downstream
reduce to AND/OR/popcount.

All graph objects are immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

import numpy as np

MAX_VERTICES = 256

# Binomial tables C(v, k) for k = 2, 3, 4 up to the vertex cap; used by the
# rank formulas (rank = sum of C(v_i, i+1)) and by bisection unranking.
_C2 = tuple(v * (v - 1) // 2 for v in range(MAX_VERTICES + 1))
_C3 = tuple(v * (v - 1) * (v - 2) // 6 for v in range(MAX_VERTICES + 1))
_C4 = tuple(v * (v - 1) * (v - 2) * (v - 3) // 24 for v in range(MAX_VERTICES + 1))
_NC2 = np.array(_C2, dtype=np.int64)
_NC3 = np.array(_C3, dtype=np.int64)
_NC4 = np.array(_C4, dtype=np.int64)


def subset_count(n: int, k: int) -> int:
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Colexicographic rank / unrank
# ---------------------------------------------------------------------------

def rank_pair(a: int, b: int) -> int:
    """Colex rank of the pair a < b."""
    return a + _C2[b]


def rank_triple(a: int, b: int, c: int) -> int:
    """Colex rank of the triple a < b < c."""
    return a + _C2[b] + _C3[c]


def rank_quad(a: int, b: int, c: int, d: int) -> int:
    """Colex rank of the quadruple a < b < c < d."""
    return a + _C2[b] + _C3[c] + _C4[d]


def rank_subset(vertices: Iterable[int]) -> int:
    """Colex rank of a 2-, 3- or 4-element vertex set (any order)."""
    vs = sorted(vertices)
    k = len(vs)
    if len(set(vs)) != k:
        raise ValueError(f"vertices must be distinct: {vs}")
    if k == 2:
        return rank_pair(*vs)
    if k == 3:
        return rank_triple(*vs)
    if k == 4:
        return rank_quad(*vs)
    raise ValueError(f"unsupported subset size {k}")


def _bisect_table(table, r):
    # largest v with table[v] <= r
    lo, hi = 0, len(table) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if table[mid] <= r:
            lo = mid
        else:
            hi = mid - 1
    return lo


def unrank_pair(r: int) -> tuple[int, int]:
    b = _bisect_table(_C2, r)
    return (r - _C2[b], b)


def unrank_triple(r: int) -> tuple[int, int, int]:
    c = _bisect_table(_C3, r)
    r -= _C3[c]
    b = _bisect_table(_C2, r)
    return (r - _C2[b], b, c)


def unrank_quad(r: int) -> tuple[int, int, int, int]:
    d = _bisect_table(_C4, r)
    r -= _C4[d]
    return unrank_triple(r) + (d,)


def unrank_subset(r: int, k: int) -> tuple[int, ...]:
    if k == 2:
        return unrank_pair(r)
    if k == 3:
        return unrank_triple(r)
    if k == 4:
        return unrank_quad(r)
    raise ValueError(f"unsupported subset size {k}")


def _unrank_bulk(ranks: np.ndarray, k: int) -> np.ndarray:
    """Vectorised unrank of many colex ranks into an (m, k) vertex array."""
    r = ranks.astype(np.int64, copy=True)
    out = np.empty((len(r), k), dtype=np.int64)
    for col, table in zip(range(k - 1, 0, -1), (_NC4, _NC3, _NC2)[4 - k:]):
        v = np.searchsorted(table, r, side="right") - 1
        out[:, col] = v
        r -= table[v]
    out[:, 0] = r
    return out


# ---------------------------------------------------------------------------
# Bitmask vertex sets
# ---------------------------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def as_mask(vertices) -> int:
    """Coerce an int mask, a VertexSet or an iterable of vertices to a mask."""
    if isinstance(vertices, int):
        return vertices
    if isinstance(vertices, VertexSet):
        return vertices.mask
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class VertexSet:
    """Immutable set of vertices backed by a single int bitmask."""

    __slots__ = ("mask",)

    def __init__(self, vertices=()):
        object.__setattr__(self, "mask", as_mask(vertices))

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        s = cls.__new__(cls)
        object.__setattr__(s, "mask", mask)
        return s

    def __setattr__(self, *a):
        raise AttributeError("VertexSet is immutable")

    def __contains__(self, v: int) -> bool:
        return bool((self.mask >> v) & 1)

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __and__(self, other):
        return VertexSet.from_mask(self.mask & as_mask(other))

    def __or__(self, other):
        return VertexSet.from_mask(self.mask | as_mask(other))

    def __sub__(self, other):
        return VertexSet.from_mask(self.mask & ~as_mask(other))

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        return f"VertexSet({list(self)})"


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------

class _UniformGraph:
    """Shared machinery for the 2/3/4-uniform graph types."""

    ARITY: int = 0

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        k = self.ARITY
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")
        self.n = n
        member = np.zeros(subset_count(n, k), dtype=bool)
        for e in edges:
            vs = sorted(e)
            if len(vs) != k or len(set(vs)) != k:
                raise ValueError(f"not a {k}-set: {tuple(e)}")
            if vs[0] < 0 or vs[-1] >= n:
                raise ValueError(f"edge {tuple(vs)} out of vertex range 0..{n - 1}")
            member[rank_subset(vs)] = True
        self._member = member
        self._member.setflags(write=False)
        self._ranks: np.ndarray | None = None
        self._tuples: list[tuple[int, ...]] | None = None

    @classmethod
    def from_membership(cls, n: int, member: np.ndarray):
        g = cls.__new__(cls)
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")
        if len(member) != subset_count(n, cls.ARITY):
            raise ValueError("membership array has wrong length")
        g.n = n
        g._member = np.asarray(member, dtype=bool).copy()
        g._member.setflags(write=False)
        g._ranks = None
        g._tuples = None
        return g

    @classmethod
    def from_ranks(cls, n: int, ranks: Iterable[int]):
        member = np.zeros(subset_count(n, cls.ARITY), dtype=bool)
        idx = np.fromiter(ranks, dtype=np.int64)
        if len(idx):
            member[idx] = True
        return cls.from_membership(n, member)

    # -- basic accessors ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edge_ranks)

    @property
    def edge_ranks(self) -> np.ndarray:
        if self._ranks is None:
            self._ranks = np.flatnonzero(self._member)
            self._ranks.setflags(write=False)
        return self._ranks

    def edge_tuples(self) -> list[tuple[int, ...]]:
        """All edges as sorted vertex tuples, in rank order (cached)."""
        if self._tuples is None:
            ranks = self.edge_ranks
            if len(ranks) == 0:
                self._tuples = []
            else:
                arr = _unrank_bulk(ranks, self.ARITY)
                self._tuples = [tuple(row) for row in arr.tolist()]
        return self._tuples

    def has_edge(self, *vertices: int) -> bool:
        vs = sorted(vertices)
        if vs[0] < 0 or vs[-1] >= self.n:
            raise ValueError(f"vertices {vertices} out of range 0..{self.n - 1}")
        return bool(self._member[rank_subset(vs)])

    def has_edge_rank(self, r: int) -> bool:
        return bool(self._member[r])

    def membership(self) -> np.ndarray:
        return self._member

    def __eq__(self, other):
        if isinstance(other, _UniformGraph):
            return (self.ARITY == other.ARITY and self.n == other.n
                    and np.array_equal(self._member, other._member))
        return NotImplemented

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, edges={self.edge_count})"

    # -- subgraphs ----------------------------------------------------------

    def delete_vertices(self, deleted) -> tuple["_UniformGraph", dict[int, int]]:
        """Remove a vertex set; survivors are relabelled to 0..n'-1.

        Returns the new graph and the explicit old->new relabelling map so
        witnesses can be translated back.
        """
        dmask = as_mask(deleted)
        if dmask >> self.n:
            raise ValueError("deleted vertices out of range")
        survivors = [v for v in range(self.n) if not (dmask >> v) & 1]
        relabel = {old: new for new, old in enumerate(survivors)}
        edges = [tuple(relabel[v] for v in e)
                 for e in self.edge_tuples()
                 if all(v in relabel for v in e)]
        return type(self)(len(survivors), edges), relabel

    def induced(self, kept) -> "_UniformGraph":
        """Subgraph induced on a vertex set, relabelled order-preservingly."""
        kmask = as_mask(kept)
        if kmask >> self.n:
            raise ValueError("vertices out of range")
        g, _ = self.delete_vertices(((1 << self.n) - 1) & ~kmask)
        return g

    def shadow(self) -> "_UniformGraph":
        """(k-1)-graph on the same vertices: union of the (k-1)-subsets of edges."""
        lower = _ARITY_TO_TYPE[self.ARITY - 1]
        member = np.zeros(subset_count(self.n, self.ARITY - 1), dtype=bool)
        for e in self.edge_tuples():
            for skip in range(self.ARITY):
                member[rank_subset(e[:skip] + e[skip + 1:])] = True
        return lower.from_membership(self.n, member)


class TwoGraph(_UniformGraph):
    """2-uniform graph; also carries per-vertex adjacency bitmasks."""

    ARITY = 2

    def adj_mask(self, v: int) -> int:
        if not hasattr(self, "_adj"):
            adj = [0] * self.n
            for a, b in self.edge_tuples():
                adj[a] |= 1 << b
                adj[b] |= 1 << a
            self._adj = adj
        return self._adj[v]


class ThreeGraph(_UniformGraph):
    """3-uniform graph; the universal host object.

    ``pair_mask(a, b)`` is the workhorse: the bitmask of vertices c with
    {a, b, c} an edge.  It is built once, lazily, from the edge list.
    """

    ARITY = 3

    def _pair_table(self) -> list[list[int]]:
        pn = getattr(self, "_pn", None)
        if pn is None:
            n = self.n
            pn = [[0] * n for _ in range(n)]
            for a, b, c in self.edge_tuples():
                ba, bb, bc = 1 << a, 1 << b, 1 << c
                pn[a][b] |= bc
                pn[b][a] |= bc
                pn[a][c] |= bb
                pn[c][a] |= bb
                pn[b][c] |= ba
                pn[c][b] |= ba
            self._pn = pn
        return pn

    def pair_mask(self, a: int, b: int) -> int:
        """Bitmask of the joint neighbourhood of the pair {a, b}."""
        return self._pair_table()[a][b]

    def codegree(self, a: int, b: int) -> int:
        return self._pair_table()[a][b].bit_count()


class FourGraph(_UniformGraph):
    """4-uniform graph; holds tetrahedral graphs as data."""

    ARITY = 4


_ARITY_TO_TYPE: dict[int, type[_UniformGraph]] = {
    2: TwoGraph, 3: ThreeGraph, 4: FourGraph,
}


def graph_type(arity: int) -> type[_UniformGraph]:
    try:
        return _ARITY_TO_TYPE[arity]
    except KeyError:
        raise ValueError(f"unsupported arity {arity}") from None


# ---------------------------------------------------------------------------
# Degree / neighbourhood operations
# ---------------------------------------------------------------------------

def _check_small_set(H: ThreeGraph, S) -> tuple[int, ...]:
    vs = tuple(sorted(S))
    if len(vs) not in (1, 2) or len(set(vs)) != len(vs):
        raise ValueError(f"S must be a set of 1 or 2 vertices, got {vs}")
    if vs[0] < 0 or vs[-1] >= H.n:
        raise ValueError(f"S={vs} not within vertex range 0..{H.n - 1}")
    return vs


def degree(H: ThreeGraph, S) -> int:
    """Number of edges containing S (|S| in {1, 2}); for a pair, the codegree."""
    vs = _check_small_set(H, S)
    if len(vs) == 2:
        return H.codegree(*vs)
    v = vs[0]
    total = 0
    for b in range(H.n):
        if b != v:
            total += H.pair_mask(v, b).bit_count()
    return total // 2


def min_codegree(H: ThreeGraph) -> int:
    """Minimum codegree over all vertex pairs."""
    if H.n < 2:
        raise ValueError("min_codegree needs at least 2 vertices")
    best = H.n
    for b in range(1, H.n):
        row = H._pair_table()[b]
        for a in range(b):
            c = row[a].bit_count()
            if c < best:
                best = c
                if best == 0:
                    return 0
    return best


def min_positive_codegree(H: ThreeGraph) -> int | None:
    """Minimum codegree over pairs lying in at least one edge; None if edgeless."""
    best = None
    for b in range(1, H.n):
        row = H._pair_table()[b]
        for a in range(b):
            c = row[a].bit_count()
            if c and (best is None or c < best):
                best = c
    return best


def neighborhood(H: ThreeGraph, S, W=None):
    """Completions of S into edges, restricted to W.

    For |S| = 2 returns a VertexSet; for |S| = 1 returns the set of pairs
    (a, b) with a < b such that S + {a, b} is an edge inside W.
    """
    vs = _check_small_set(H, S)
    wmask = ((1 << H.n) - 1) if W is None else as_mask(W)
    if len(vs) == 2:
        return VertexSet.from_mask(H.pair_mask(*vs) & wmask)
    v = vs[0]
    pairs = set()
    for b in bits(wmask):
        if b == v:
            continue
        for c in bits(H.pair_mask(v, b) & wmask):
            if c > b:
                pairs.add((b, c))
    return pairs


def link_graph(H: ThreeGraph, v: int) -> TwoGraph:
    """Link of v: the 2-graph {ab : vab in E(H)} on the same vertex range."""
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range")
    edges = []
    for b in range(H.n):
        if b == v:
            continue
        for c in bits(H.pair_mask(v, b)):
            if c > b:
                edges.append((b, c))
    return TwoGraph(H.n, edges)


def shadow(G: _UniformGraph) -> _UniformGraph:
    return G.shadow()


def induced(G: _UniformGraph, U) -> _UniformGraph:
    return G.induced(U)


def delete_vertices(G: _UniformGraph, U) -> tuple[_UniformGraph, dict[int, int]]:
    return G.delete_vertices(U)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------
# Line 1: "<arity> <n> <m>"; then m lines of sorted vertex ids, one edge per
# line.  '#' starts a comment anywhere on a line.

def dumps_graph(G: _UniformGraph) -> str:
    lines = [f"{G.ARITY} {G.n} {G.edge_count}"]
    lines.extend(" ".join(map(str, e)) for e in G.edge_tuples())
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> _UniformGraph:
    records = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            records.append(body.split())
    if not records:
        raise ValueError("empty hypergraph file")
    head = records[0]
    if len(head) != 3:
        raise ValueError(f"bad header {' '.join(head)!r}: expected 'k n m'")
    k, n, m = map(int, head)
    cls = graph_type(k)
    if len(records) - 1 != m:
        raise ValueError(f"header announces {m} edges, file has {len(records) - 1}")
    edges = []
    for rec in records[1:]:
        vs = tuple(map(int, rec))
        if list(vs) != sorted(set(vs)) or len(vs) != k:
            raise ValueError(f"edge line {' '.join(rec)!r} is not a sorted {k}-set")
        edges.append(vs)
    return cls(n, edges)


def write_graph(path, G: _UniformGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(G))


def read_graph(path) -> _UniformGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graph(fh.read())
