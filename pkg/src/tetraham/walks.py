"""Squared-tight-walk validation and algebra, connector search between
ordered triples, exhaustive squared-tight-Hamilton-cycle decision, and a
greedy path-cover heuristic.

A squared tight walk is a vertex sequence in which every four consecutive
vertices induce a tetrahedron; a path additionally repeats no vertex.  All
searches expand candidates through the common neighbourhood of the last
window's three pairs, in ascending vertex order, so results are
deterministic.  Budgets count expanded search nodes, and running out of
budget is reported separately from a proven "none".
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field, replace

from .hypergraph import ThreeGraph, as_mask, bits


class SeqKind(enum.Enum):
    WALK = "walk"
    PATH = "path"


@dataclass(frozen=True)
class VertexSequence:
    """Ordered vertex list with kind and optional validity flags.

    ``valid`` records the result of a squared-tight re-check when one was
    performed (None = not checked).  ``closes_cycle`` marks concatenations
    whose tail returns to the head pair, i.e. candidates for closing a
    cycle.
    """

    vertices: tuple[int, ...]
    kind: SeqKind = SeqKind.PATH
    valid: bool | None = None
    closes_cycle: bool = False

    def __post_init__(self):
        if self.kind is SeqKind.PATH and len(set(self.vertices)) != len(self.vertices):
            raise ValueError("PATH kind requires distinct vertices")

    def __len__(self) -> int:
        return len(self.vertices)

    def initial_triple(self) -> tuple[int, int, int]:
        if len(self.vertices) < 3:
            raise ValueError("sequence too short to have ends")
        return self.vertices[:3]

    def final_triple(self) -> tuple[int, int, int]:
        if len(self.vertices) < 3:
            raise ValueError("sequence too short to have ends")
        return self.vertices[-3:]

    def vertex_mask(self) -> int:
        return as_mask(self.vertices)


def path(vertices) -> VertexSequence:
    return VertexSequence(tuple(vertices), SeqKind.PATH)


def walk(vertices) -> VertexSequence:
    return VertexSequence(tuple(vertices), SeqKind.WALK)


class SearchStatus(enum.Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    value: object = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class _Budget:
    """Counts expanded nodes; ``take`` returns False once the cap is hit."""

    __slots__ = ("remaining", "spent", "exhausted")

    def __init__(self, limit: int | None):
        self.remaining = limit
        self.spent = 0
        self.exhausted = False

    def take(self) -> bool:
        if self.remaining is not None:
            if self.remaining <= 0:
                self.exhausted = True
                return False
            self.remaining -= 1
        self.spent += 1
        return True


def _window_ok(H: ThreeGraph, a: int, b: int, c: int, d: int) -> bool:
    four = {a, b, c, d}
    if len(four) != 4:
        return False
    return (H.has_edge(a, b, c) and H.has_edge(a, b, d)
            and H.has_edge(a, c, d) and H.has_edge(b, c, d))


def is_squared_tight_walk(H: ThreeGraph, seq) -> bool:
    """Every window of four consecutive vertices induces a tetrahedron.

    Length-3 sequences are valid exactly when the triple is an edge (the
    degenerate-path convention); shorter sequences are rejected.
    """
    vs = seq.vertices if isinstance(seq, VertexSequence) else tuple(seq)
    for v in vs:
        if not 0 <= v < H.n:
            raise ValueError(f"vertex {v} out of range 0..{H.n - 1}")
    if len(vs) < 3:
        raise ValueError("sequences shorter than 3 vertices are not walks")
    if len(vs) == 3:
        return len(set(vs)) == 3 and H.has_edge(*vs)
    return all(_window_ok(H, *vs[i:i + 4]) for i in range(len(vs) - 3))


def is_squared_tight_path(H: ThreeGraph, seq) -> bool:
    vs = seq.vertices if isinstance(seq, VertexSequence) else tuple(seq)
    return len(set(vs)) == len(vs) and is_squared_tight_walk(H, vs)


def is_squared_tight_cycle(H: ThreeGraph, seq) -> bool:
    """Cyclic variant: all n windows of the cyclic order induce tetrahedra."""
    vs = seq.vertices if isinstance(seq, VertexSequence) else tuple(seq)
    if len(vs) < 5 or len(set(vs)) != len(vs):
        return False
    ext = vs + vs[:3]
    return all(_window_ok(H, *ext[i:i + 4]) for i in range(len(vs)))


class OverlapMismatch(ValueError):
    pass


def concat(H: ThreeGraph, w1: VertexSequence, w2: VertexSequence,
           overlap: int = 2) -> VertexSequence:
    """Concatenate two walks overlapping in their last/first ``overlap``
    vertices (2 for tight-walk splicing, 3 for squared-tight splicing).

    The squared-tight validity of the output is re-checked against H and
    returned in the ``valid`` flag rather than assumed from the inputs.
    ``closes_cycle`` is set when the result's last two vertices equal its
    first two, the splice condition for closing a cycle.
    """
    if overlap not in (2, 3):
        raise ValueError("overlap must be 2 or 3")
    xs, ys = w1.vertices, w2.vertices
    if len(xs) < overlap or len(ys) < overlap or xs[-overlap:] != ys[:overlap]:
        raise OverlapMismatch(
            f"tail {xs[-overlap:]} of first walk != head {ys[:overlap]} of second")
    merged = xs + ys[overlap:]
    shared = set(ys[:overlap])
    disjoint = not (set(xs) & set(ys) - shared)
    kind = (SeqKind.PATH
            if w1.kind is SeqKind.PATH and w2.kind is SeqKind.PATH and disjoint
            else SeqKind.WALK)
    closes = len(merged) >= 4 and merged[-2:] == merged[:2]
    return VertexSequence(merged, kind,
                          valid=is_squared_tight_walk(H, merged),
                          closes_cycle=closes)


def reverse(seq: VertexSequence) -> VertexSequence:
    """Reverse the vertex order; windows are order-insensitive, so validity
    is preserved."""
    return replace(seq, vertices=seq.vertices[::-1])


# ---------------------------------------------------------------------------
# Connector search
# ---------------------------------------------------------------------------

def _require_ordered_edge(H: ThreeGraph, triple) -> tuple[int, int, int]:
    t = tuple(triple)
    if len(t) != 3 or len(set(t)) != 3:
        raise ValueError(f"{t} is not an ordered triple of distinct vertices")
    if not H.has_edge(*t):
        raise ValueError(f"triple {t} is not an edge")
    return t


def find_squared_tight_path(
    H: ThreeGraph,
    start,
    goal,
    forbidden=0,
    max_vertices: int | None = None,
    budget: int | None = None,
) -> SearchResult:
    """Depth-first search for a squared tight path from the ordered triple
    ``start`` to the ordered triple ``goal``.

    The path begins with start's vertices in order, ends with goal's in
    order, avoids ``forbidden`` internally, and uses at most ``max_vertices``
    vertices.  Ends must be identical (degenerate 3-vertex path) or
    vertex-disjoint.  With no budget the search is exhaustive, so NONE is a
    proof of nonexistence under the given caps.
    """
    start = _require_ordered_edge(H, start)
    goal = _require_ordered_edge(H, goal)
    fmask = as_mask(forbidden)
    if fmask & (as_mask(start) | as_mask(goal)):
        raise ValueError("end triples must avoid the forbidden set")
    if max_vertices is None:
        max_vertices = H.n
    if start == goal:
        return SearchResult(SearchStatus.FOUND, path(start), 0)
    if set(start) & set(goal):
        raise ValueError("end triples must be identical or disjoint")
    if max_vertices < 6:
        return SearchResult(SearchStatus.NONE, None, 0)

    d_, e_, f_ = goal
    goal_mask = as_mask(goal)
    bud = _Budget(budget)
    pm = H.pair_mask

    def completes(a: int, b: int, c: int) -> bool:
        return bool((pm(a, b) & pm(a, c) & pm(b, c)) >> d_ & 1
                    and (pm(b, c) & pm(b, d_) & pm(c, d_)) >> e_ & 1
                    and (pm(c, d_) & pm(c, e_) & pm(d_, e_)) >> f_ & 1)

    seq = list(start)
    visited = as_mask(start)
    blocked = fmask | goal_mask

    def dfs() -> bool:
        nonlocal visited
        a, b, c = seq[-3], seq[-2], seq[-1]
        if completes(a, b, c):
            return True
        if len(seq) + 4 > max_vertices:
            return False
        cand = pm(a, b) & pm(a, c) & pm(b, c) & ~visited & ~blocked
        for v in bits(cand):
            if not bud.take():
                return False
            bit = 1 << v
            seq.append(v)
            visited |= bit
            if dfs():
                return True
            seq.pop()
            visited ^= bit
        return False

    if dfs():
        return SearchResult(SearchStatus.FOUND, path(tuple(seq) + goal), bud.spent)
    status = SearchStatus.BUDGET_EXHAUSTED if bud.exhausted else SearchStatus.NONE
    return SearchResult(status, None, bud.spent)


@dataclass(frozen=True)
class ConnectResult:
    status: SearchStatus
    paths: tuple[VertexSequence, ...] = ()
    failed_index: int | None = None
    nodes: int = 0


def connect_many(
    H: ThreeGraph,
    pairs,
    forbidden=0,
    per_path_cap: int | None = None,
    budget: int | None = None,
) -> ConnectResult:
    """Sequentially connect each (from, to) pair by a squared tight path,
    folding every found path into the forbidden set so the connectors come
    out vertex-disjoint.  Connectors also avoid the end triples of the
    other pairs.  Reports the first failing index on failure."""
    pairs = [( _require_ordered_edge(H, x), _require_ordered_edge(H, y))
             for x, y in pairs]
    end_masks = [as_mask(x) | as_mask(y) for x, y in pairs]
    all_ends = 0
    total_end_count = 0
    for m in end_masks:
        all_ends |= m
        total_end_count += m.bit_count()
    if total_end_count != 6 * len(pairs):
        raise ValueError("end triples of distinct pairs must be pairwise disjoint")
    fmask = as_mask(forbidden)
    if fmask & all_ends:
        raise ValueError("end triples must avoid the forbidden set")

    used = fmask
    found: list[VertexSequence] = []
    nodes = 0
    for i, (x, y) in enumerate(pairs):
        avoid = used | (all_ends & ~end_masks[i])
        res = find_squared_tight_path(H, x, y, avoid, per_path_cap, budget)
        nodes += res.nodes
        if not res.found:
            return ConnectResult(res.status, tuple(found), i, nodes)
        found.append(res.value)
        used |= res.value.vertex_mask()
    return ConnectResult(SearchStatus.FOUND, tuple(found), None, nodes)


# ---------------------------------------------------------------------------
# Hamilton search
# ---------------------------------------------------------------------------

def find_squared_tight_hamilton_cycle(
    H: ThreeGraph, budget: int | None = None
) -> SearchResult:
    """Exhaustive DFS for a cyclic order whose every 4 consecutive vertices
    induce a tetrahedron.

    Anchors vertex 0 first and requires the second vertex to be smaller
    than the last, halving the reflective symmetry.  NONE means the whole
    (pruned) tree was exhausted; running out of budget is reported
    distinctly.
    """
    n = H.n
    if n < 5:
        raise ValueError("Hamilton search needs n >= 5")
    bud = _Budget(budget)
    pm = H.pair_mask
    full = (1 << n) - 1
    seq = [0]

    def close_ok(a: int, b: int, c: int) -> bool:
        # wrap windows (a,b,c,0), (b,c,0,s1), (c,0,s1,s2)
        s1, s2 = seq[1], seq[2]
        return bool((pm(a, b) & pm(a, c) & pm(b, c)) & 1
                    and (pm(b, c) >> s1) & 1 and (pm(b, 0) >> s1) & 1
                    and (pm(c, 0) >> s1) & 1
                    and (pm(c, 0) >> s2) & 1 and (pm(c, s1) >> s2) & 1
                    and (pm(0, s1) >> s2) & 1)

    def dfs(visited: int) -> bool:
        depth = len(seq)
        if depth == n:
            a, b, c = seq[-3], seq[-2], seq[-1]
            return seq[1] < seq[-1] and close_ok(a, b, c)
        if depth == 1:
            cand_pairs = []
            for b_ in range(1, n):
                row = pm(0, b_)
                for c_ in bits(row):
                    if c_ != b_:
                        cand_pairs.append((b_, c_))
            for b_, c_ in cand_pairs:
                if not bud.take():
                    return False
                seq.append(b_)
                seq.append(c_)
                if dfs(visited | (1 << b_) | (1 << c_)):
                    return True
                seq.pop()
                seq.pop()
            return False
        a, b, c = seq[-3], seq[-2], seq[-1]
        cand = pm(a, b) & pm(a, c) & pm(b, c) & ~visited
        if depth == n - 1:
            # last slot: the closing windows constrain it further
            for v in bits(cand):
                if v <= seq[1]:
                    continue
                if not bud.take():
                    return False
                seq.append(v)
                if dfs(visited | (1 << v)):
                    return True
                seq.pop()
            return False
        for v in bits(cand):
            if not bud.take():
                return False
            seq.append(v)
            if dfs(visited | (1 << v)):
                return True
            seq.pop()
        return False

    if H.edge_count and dfs(1):
        cycle = VertexSequence(tuple(seq), SeqKind.PATH, valid=True)
        assert is_squared_tight_cycle(H, cycle)
        return SearchResult(SearchStatus.FOUND, cycle, bud.spent)
    status = SearchStatus.BUDGET_EXHAUSTED if bud.exhausted else SearchStatus.NONE
    return SearchResult(status, None, bud.spent)


# ---------------------------------------------------------------------------
# Greedy cover
# ---------------------------------------------------------------------------

def _grow_maximal_path(H: ThreeGraph, seed_edge, pool_mask: int,
                       rng: random.Random) -> list[int]:
    """Extend a seed edge to a maximal squared tight path inside pool_mask."""
    seq = list(seed_edge)
    used = as_mask(seq)
    pm = H.pair_mask
    for _ in range(2):  # grow the tail, then flip and grow the other end
        while True:
            a, b, c = seq[-3], seq[-2], seq[-1]
            cand = pm(a, b) & pm(a, c) & pm(b, c) & pool_mask & ~used
            if not cand:
                break
            choices = list(bits(cand))
            v = rng.choice(choices)
            seq.append(v)
            used |= 1 << v
        seq.reverse()
    return seq


def greedy_path_cover(H: ThreeGraph, leftover_fraction: float, seed,
                      max_attempts: int = 200) -> list[VertexSequence]:
    """Cover vertices by vertex-disjoint squared tight paths, greedily.

    Repeatedly grows a maximal path from a random seed edge among the
    uncovered vertices until fewer than leftover_fraction * n vertices are
    uncovered or no seed edge can be found.  No optimality guarantee.
    """
    if not 0.0 < leftover_fraction < 1.0:
        raise ValueError("leftover_fraction must lie strictly between 0 and 1")
    rng = random.Random(seed)
    n = H.n
    uncovered = (1 << n) - 1
    target = leftover_fraction * n
    out: list[VertexSequence] = []

    def sample_seed_edge() -> tuple[int, int, int] | None:
        verts = list(bits(uncovered))
        if len(verts) < 3:
            return None
        for _ in range(max_attempts):
            a, b = rng.sample(verts, 2)
            cand = H.pair_mask(a, b) & uncovered
            if cand:
                c = rng.choice(list(bits(cand)))
                return (a, b, c)
        # fall back to a scan so a stall is a real absence of seed edges
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                cand = H.pair_mask(a, b) & uncovered
                if cand:
                    return (a, b, next(bits(cand)))
        return None

    while uncovered.bit_count() > target:
        seed_edge = sample_seed_edge()
        if seed_edge is None:
            break
        seq = _grow_maximal_path(H, seed_edge, uncovered, rng)
        p = VertexSequence(tuple(seq), SeqKind.PATH, valid=True)
        assert is_squared_tight_path(H, p)
        out.append(p)
        uncovered &= ~p.vertex_mask()
    return out
