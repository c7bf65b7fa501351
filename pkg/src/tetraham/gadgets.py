"""Blowups, small-clique counting, the 36-vertex absorber gadget and the
donation path built from a 4-blowup of the complete 5-vertex 3-graph.

An absorber for an ordered 4-tuple v is a labelled vertex set
{x_i, y_i, z_i, u_{i,1..6} : i in 1..4} whose five path projections can be
rewritten, without moving any path end, so that their union grows by
exactly the four target vertices.  A donation path can instead shrink by
up to three designated interior vertices with unchanged ends; together the
two gadgets absorb leftover sets of any small size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .hypergraph import ThreeGraph, as_mask, bits
from .walks import (
    SearchResult,
    SearchStatus,
    SeqKind,
    VertexSequence,
    is_squared_tight_path,
)


# ---------------------------------------------------------------------------
# Blowups and clique counting
# ---------------------------------------------------------------------------

def blowup(F: ThreeGraph, t: int) -> tuple[ThreeGraph, list[tuple[int, ...]]]:
    """t-blowup of F: each vertex becomes a class of t clones; edges are the
    triples taking one clone from each vertex of an edge of F.

    Returns the blown-up graph and the class map (class per F-vertex).
    """
    if t < 1:
        raise ValueError("blowup factor must be >= 1")
    classes = [tuple(range(v * t, (v + 1) * t)) for v in range(F.n)]
    edges = []
    for a, b, c in F.edge_tuples():
        for x in classes[a]:
            for y in classes[b]:
                for z in classes[c]:
                    edges.append((x, y, z))
    return ThreeGraph(F.n * t, edges), classes


def count_copies(H: ThreeGraph, clique_order: int) -> int:
    """Exact number of complete sub-3-graphs on 4 or 5 vertices."""
    if clique_order not in (4, 5):
        raise ValueError("only orders 4 and 5 are supported")
    pm = H.pair_mask
    total = 0
    for a, b, c in H.edge_tuples():
        cand = (pm(a, b) & pm(a, c) & pm(b, c)) >> (c + 1)
        if clique_order == 4:
            total += cand.bit_count()
            continue
        base = c + 1
        while cand:
            low = cand & -cand
            d = base + low.bit_length() - 1
            higher = pm(a, d) & pm(b, d) & pm(c, d) & (pm(a, b) & pm(a, c) & pm(b, c))
            total += (higher >> (d + 1)).bit_count()
            cand ^= low
    return total


def find_blowup_copy(
    H: ThreeGraph,
    F: ThreeGraph,
    t: int,
    avoid=0,
    budget: int | None = None,
    seed=None,
) -> SearchResult:
    """Backtracking search for a labelled copy of the t-blowup of F.

    Classes grow round-robin (so a copy of F is found before any class is
    cloned); a vertex enters class i only if it completes a partite triple
    with every pair already placed in classes j, k for each edge {i,j,k} of
    F.  Budget counts vertex placements; ``seed`` shuffles candidate order.
    """
    if t < 1:
        raise ValueError("blowup factor must be >= 1")
    f = F.n
    full = (1 << H.n) - 1
    avoid_mask = as_mask(avoid)
    rng = random.Random(seed) if seed is not None else None

    edges_at = [[] for _ in range(f)]
    for e in F.edge_tuples():
        for i in e:
            others = tuple(v for v in e if v != i)
            edges_at[i].append(others)

    classes: list[list[int]] = [[] for _ in range(f)]
    slots = [(i, s) for s in range(t) for i in range(f)]
    bud_remaining = [budget]

    def candidates(i: int, used: int) -> int:
        cand = full & ~used & ~avoid_mask
        for j, k in edges_at[i]:
            for u in classes[j]:
                for w in classes[k]:
                    cand &= H.pair_mask(u, w)
                    if not cand:
                        return 0
        return cand

    spent = [0]
    exhausted = [False]

    def dfs(slot: int, used: int) -> bool:
        if slot == len(slots):
            return True
        i, _ = slots[slot]
        cand = candidates(i, used)
        choices = list(bits(cand))
        if rng is not None:
            rng.shuffle(choices)
        for v in choices:
            if bud_remaining[0] is not None:
                if bud_remaining[0] <= 0:
                    exhausted[0] = True
                    return False
                bud_remaining[0] -= 1
            spent[0] += 1
            classes[i].append(v)
            if dfs(slot + 1, used | (1 << v)):
                return True
            classes[i].pop()
            if exhausted[0]:
                return False
        return False

    if dfs(0, 0):
        return SearchResult(SearchStatus.FOUND,
                            [tuple(c) for c in classes], spent[0])
    status = SearchStatus.BUDGET_EXHAUSTED if exhausted[0] else SearchStatus.NONE
    return SearchResult(status, None, spent[0])


# ---------------------------------------------------------------------------
# Absorbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Absorber:
    """Labelled 36-vertex gadget: core classes {x_i, y_i, z_i} for i in 1..4
    plus a 6-vertex sleeve u_{i,1..6} around each y_i."""

    x: tuple[int, int, int, int]
    y: tuple[int, int, int, int]
    z: tuple[int, int, int, int]
    u: tuple[tuple[int, ...], ...]  # 4 rows of 6

    def __post_init__(self):
        if len(self.x) != 4 or len(self.y) != 4 or len(self.z) != 4:
            raise ValueError("x, y, z must each have 4 vertices")
        if len(self.u) != 4 or any(len(row) != 6 for row in self.u):
            raise ValueError("u must be 4 rows of 6 vertices")
        if len(set(self.vertices())) != 36:
            raise ValueError("absorber labels must name 36 distinct vertices")

    def vertices(self) -> tuple[int, ...]:
        return self.x + self.y + self.z + tuple(v for row in self.u for v in row)

    def vertex_mask(self) -> int:
        return as_mask(self.vertices())

    def to_json(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "z": list(self.z),
                "u": [list(r) for r in self.u]}

    @classmethod
    def from_json(cls, obj: dict) -> "Absorber":
        return cls(tuple(obj["x"]), tuple(obj["y"]), tuple(obj["z"]),
                   tuple(tuple(r) for r in obj["u"]))


def _core_path(A: Absorber, with_y: bool) -> VertexSequence:
    vs = A.x + (A.y if with_y else ()) + A.z
    return VertexSequence(vs, SeqKind.PATH)


def _sleeve_path(A: Absorber, i: int, middle: int) -> VertexSequence:
    row = A.u[i]
    return VertexSequence(row[:3] + (middle,) + row[3:], SeqKind.PATH)


def absorber_paths(A: Absorber) -> list[VertexSequence]:
    """The five disjoint projections covering exactly the 36 labels: the
    x-z core and the four sleeves threaded through their y_i."""
    return [_core_path(A, with_y=False)] + [
        _sleeve_path(A, i, A.y[i]) for i in range(4)
    ]


def absorbed_paths(A: Absorber, v) -> list[VertexSequence]:
    """The five rewritten projections: the full x-y-z core plus the sleeves
    threaded through the target vertices, covering the labels and v."""
    v = tuple(v)
    if len(v) != 4 or len(set(v)) != 4:
        raise ValueError("target must be 4 distinct vertices")
    if set(v) & set(A.vertices()):
        raise ValueError("target vertices must avoid the absorber's labels")
    return [_core_path(A, with_y=True)] + [
        _sleeve_path(A, i, v[i]) for i in range(4)
    ]


def is_absorber(H: ThreeGraph, A: Absorber, v) -> bool:
    """Window-by-window validation of all ten projections for target v."""
    v = tuple(v)
    if len(v) != 4 or len(set(v)) != 4:
        raise ValueError("target must be 4 distinct vertices")
    if set(v) & set(A.vertices()):
        raise ValueError("target vertices must avoid the absorber's labels")
    seqs = absorber_paths(A) + absorbed_paths(A, v)
    return all(is_squared_tight_path(H, s) for s in seqs)


def find_absorber(
    H: ThreeGraph,
    v,
    budget: int | None = None,
    seed=0,
    avoid=0,
) -> SearchResult:
    """Search for an absorber for the ordered 4-tuple v.

    Recipe: place a 3-blowup of the complete 4-vertex 3-graph as the core
    (classes {x_i, y_i, z_i}), then for each i grow a sleeve inside the
    common link of v_i and y_i: a triangle of that link that is also an
    edge, doubled so that all cross pairs stay in the link and all partite
    triples are edges.  Randomised restarts under ``seed``; any result is
    re-validated with is_absorber before being returned.
    """
    v = tuple(v)
    if len(v) != 4 or len(set(v)) != 4:
        raise ValueError("target must be 4 distinct vertices")
    avoid_mask = as_mask(avoid) | as_mask(v)
    rng = random.Random(seed)
    pm = H.pair_mask
    remaining = [budget]
    exhausted = [False]

    def spend(k: int = 1) -> bool:
        if remaining[0] is not None:
            if remaining[0] < k:
                exhausted[0] = True
                return False
            remaining[0] -= k
        return True

    K4 = ThreeGraph(4, list(combinations(range(4), 3)))

    def build_sleeve(vi: int, yi: int, used: int):
        """6 vertices a1 a2 a3 b1 b2 b3: classes {a_j, b_j} double a triangle
        of the common link of vi and yi, keeping every cross pair in the
        link and every partite triple an edge."""
        link = [pm(vi, u) & pm(yi, u) if u != vi and u != yi else 0
                for u in range(H.n)]
        pool = [u for u in range(H.n)
                if link[u] and not (used >> u) & 1]
        rng.shuffle(pool)
        for a1 in pool:
            m1 = link[a1] & ~used
            for a2 in bits(m1):
                m2 = m1 & link[a2] & pm(a1, a2)
                for a3 in bits(m2):
                    if not spend():
                        return None
                    picked = as_mask((a1, a2, a3))
                    # b_j joins class j: link-adjacent to the four vertices
                    # of the other two classes, edge-completing the partite
                    # triples it creates
                    f1 = (link[a2] & link[a3] & pm(a2, a3)
                          & ~used & ~picked)
                    for b1 in bits(f1):
                        if not spend():
                            return None
                        f2 = (link[a1] & link[b1] & link[a3]
                              & pm(a1, a3) & pm(b1, a3)
                              & ~used & ~picked & ~(1 << b1))
                        for b2 in bits(f2):
                            f3 = (link[a1] & link[b1] & link[a2] & link[b2]
                                  & pm(a1, a2) & pm(a1, b2)
                                  & pm(b1, a2) & pm(b1, b2)
                                  & ~used & ~picked & ~(1 << b1) & ~(1 << b2))
                            if f3:
                                b3 = next(bits(f3))
                                return (a1, a2, a3, b1, b2, b3)
        return None

    for attempt in range(64):
        core = find_blowup_copy(H, K4, 3, avoid=avoid_mask,
                                budget=remaining[0], seed=rng.random())
        if remaining[0] is not None:
            remaining[0] = max(0, remaining[0] - core.nodes)
        if core.status is SearchStatus.BUDGET_EXHAUSTED:
            return SearchResult(SearchStatus.BUDGET_EXHAUSTED, None)
        if not core.found:
            return SearchResult(SearchStatus.NONE, None)
        base = core.value  # 4 classes of 3
        labels = list(range(3))
        rng.shuffle(labels)
        for rot in range(3):
            xi = tuple(base[i][(labels[0] + rot) % 3] for i in range(4))
            yi = tuple(base[i][(labels[1] + rot) % 3] for i in range(4))
            zi = tuple(base[i][(labels[2] + rot) % 3] for i in range(4))
            used = avoid_mask | as_mask(xi) | as_mask(yi) | as_mask(zi)
            rows = []
            for i in range(4):
                sleeve = build_sleeve(v[i], yi[i], used)
                if sleeve is None:
                    break
                rows.append(sleeve)
                used |= as_mask(sleeve)
            if len(rows) == 4:
                A = Absorber(xi, yi, zi, tuple(rows))
                assert is_absorber(H, A, v)
                return SearchResult(SearchStatus.FOUND, A)
            if exhausted[0]:
                return SearchResult(SearchStatus.BUDGET_EXHAUSTED, None)
    return SearchResult(SearchStatus.NONE, None)


# ---------------------------------------------------------------------------
# Donation path
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DonationPath:
    """Squared tight path assembled from a 4-blowup of the complete
    5-vertex 3-graph; rows a..d each pick one clone per class, and the last
    vertex of rows a, b, c may be donated without moving the ends."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        rows = (self.a, self.b, self.c, self.d)
        if any(len(r) != 5 for r in rows):
            raise ValueError("each row must have 5 vertices")
        if len(set(self.sequence().vertices)) != 20:
            raise ValueError("donation path needs 20 distinct vertices")

    def sequence(self) -> VertexSequence:
        return VertexSequence(self.a + self.b + self.c + self.d, SeqKind.PATH)

    def donatable(self) -> tuple[int, int, int]:
        return (self.a[4], self.b[4], self.c[4])

    def vertex_mask(self) -> int:
        return self.sequence().vertex_mask()


def donation_path(H: ThreeGraph, avoid=0, budget: int | None = None,
                  seed=None) -> SearchResult:
    """Find a donation path avoiding the given vertices."""
    K5 = ThreeGraph(5, list(combinations(range(5), 3)))
    res = find_blowup_copy(H, K5, 4, avoid=avoid, budget=budget, seed=seed)
    if not res.found:
        return SearchResult(res.status, None, res.nodes)
    classes = res.value  # 5 classes of 4 clones
    rows = tuple(tuple(classes[k][j] for k in range(5)) for j in range(4))
    D = DonationPath(*rows)
    assert is_squared_tight_path(H, D.sequence())
    return SearchResult(SearchStatus.FOUND, D, res.nodes)


def donate(H: ThreeGraph, D: DonationPath, S) -> VertexSequence:
    """Remove a subset of the donatable vertices; the result is re-validated
    as a squared tight path with the same ends."""
    S = set(S)
    if not S <= set(D.donatable()):
        raise ValueError(f"{sorted(S)} is not a subset of the donatable "
                         f"vertices {D.donatable()}")
    full = D.sequence()
    kept = tuple(u for u in full.vertices if u not in S)
    out = VertexSequence(kept, SeqKind.PATH,
                         valid=is_squared_tight_path(H, kept))
    assert out.valid
    assert out.initial_triple() == full.initial_triple()
    assert out.final_triple() == full.final_triple()
    return out


# ---------------------------------------------------------------------------
# Absorption
# ---------------------------------------------------------------------------

class InsufficientAbsorbers(RuntimeError):
    def __init__(self, tuple4):
        self.tuple4 = tuple(tuple4)
        super().__init__(f"no available absorber accepts {self.tuple4}")


def absorb(
    H: ThreeGraph,
    paths: list,
    L,
    absorbers: list[tuple[Absorber, bool]],
) -> list[VertexSequence]:
    """Swallow the vertex set L into the path system without moving any
    path end.

    ``paths`` holds VertexSequence objects plus at most one DonationPath
    (required only when |L| is not a multiple of four); each absorber's
    five projection paths must appear in ``paths``.  L is padded to a
    multiple of four with donated vertices, partitioned into 4-tuples, and
    each tuple is matched greedily to the first available absorber that
    validates for it.

    Raises:
        InsufficientAbsorbers: naming the unmatched 4-tuple.
    """
    donation: DonationPath | None = None
    plain: list[VertexSequence] = []
    for p in paths:
        if isinstance(p, DonationPath):
            if donation is not None:
                raise ValueError("at most one donation path is supported")
            donation = p
        else:
            plain.append(p)

    path_vertices = 0
    for p in plain:
        path_vertices |= p.vertex_mask()
    if donation is not None:
        path_vertices |= donation.vertex_mask()

    L = sorted(set(L))
    lmask = as_mask(L)
    if lmask & path_vertices:
        raise ValueError("L must be disjoint from all path vertices")

    need = (-len(L)) % 4
    if need and donation is None:
        raise ValueError("padding |L| to a multiple of four needs a donation path")
    donated: tuple[int, ...] = ()
    if need:
        donated = donation.donatable()[:need]
    targets = sorted(L) + list(donated)
    tuples4 = [tuple(targets[i:i + 4]) for i in range(0, len(targets), 4)]

    available = sum(1 for _, ok in absorbers if ok)
    if len(tuples4) > available:
        raise ValueError(f"|L'| = {len(targets)} needs {len(tuples4)} absorbers, "
                         f"only {available} available")

    # match the absorbers' projection paths inside the input list
    index_of: dict[tuple[int, ...], int] = {}
    for idx, p in enumerate(plain):
        index_of[p.vertices] = idx
    owners: dict[int, tuple[int, int]] = {}
    for ai, (A, _) in enumerate(absorbers):
        for pi, proj in enumerate(absorber_paths(A)):
            where = index_of.get(proj.vertices)
            if where is None:
                raise ValueError(
                    f"projection path {proj.vertices} of absorber {ai} is "
                    "missing from the path list")
            owners[where] = (ai, pi)

    consumed: dict[int, tuple[int, ...]] = {}
    for t in tuples4:
        chosen = None
        for ai, (A, ok) in enumerate(absorbers):
            if not ok or ai in consumed:
                continue
            if not (A.vertex_mask() & as_mask(t)) and is_absorber(H, A, t):
                chosen = ai
                break
        if chosen is None:
            raise InsufficientAbsorbers(t)
        consumed[chosen] = t

    out: list[VertexSequence] = []
    rewritten_of: dict[int, list[VertexSequence]] = {
        ai: absorbed_paths(absorbers[ai][0], t) for ai, t in consumed.items()
    }
    for p in paths:
        if isinstance(p, DonationPath):
            out.append(donate(H, p, donated))
        else:
            where = index_of[p.vertices]
            if where in owners and owners[where][0] in consumed:
                ai, pi = owners[where]
                out.append(rewritten_of[ai][pi])
            else:
                out.append(p)
    return out


def validate_absorption(old_paths: list, new_paths: list[VertexSequence],
                        L, H: ThreeGraph | None = None) -> dict:
    """Independent soundness oracle for an absorption rewrite: pairwise
    disjointness, vertex coverage old-union-plus-L, and per-path end
    preservation (optionally re-validating every output path against H).

    Reads only the sequences; shares no logic with absorb().
    """
    def seq_of(p):
        return p.sequence() if isinstance(p, DonationPath) else p

    olds = [seq_of(p) for p in old_paths]
    news = list(new_paths)
    checks = {"disjoint": True, "coverage": True, "ends": True, "valid": True}

    seen: set[int] = set()
    for p in news:
        vs = set(p.vertices)
        if seen & vs:
            checks["disjoint"] = False
        seen |= vs

    old_union = set().union(*(set(p.vertices) for p in olds)) if olds else set()
    checks["coverage"] = seen == old_union | set(L)

    if len(olds) != len(news):
        checks["ends"] = False
    else:
        for o, q in zip(olds, news):
            if (o.initial_triple() != q.initial_triple()
                    or o.final_triple() != q.final_triple()):
                checks["ends"] = False
                break

    if H is not None:
        checks["valid"] = all(is_squared_tight_path(H, p) for p in news)
    checks["ok"] = all(checks.values())
    return checks
