"""Instance factories: the extremal construction, complete and partite
graphs, Bernoulli random 3-graphs and a codegree-conditioned sampler."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .hypergraph import (
    ThreeGraph,
    min_codegree,
    rank_pair,
    subset_count,
    unrank_triple,
)


@dataclass(frozen=True)
class ConstructionSpec:
    """Partition bookkeeping for the extremal construction.

    Parts are labelled 1..4 and stored as contiguous vertex blocks.
    """

    n: int
    part_sizes: tuple[int, int, int, int]
    part_of: tuple[int, ...]  # vertex -> part label in 1..4

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[], [], [], []]
        for v, p in enumerate(self.part_of):
            out[p - 1].append(v)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "parts": self.parts()}


def _part_sizes(n: int) -> tuple[int, int, int, int]:
    base, rem = divmod(n, 4)
    sizes = [base + 1] * rem + [base] * (4 - rem)
    if n == 5:
        # The extremal codegree floor(3n/4)-2 is only attained when a part of
        # size ceil(n/4) sits at index >= 2; with three singleton parts that
        # forces the layout (1,2,1,1).
        sizes = [1, 2, 1, 1]
    return tuple(sizes)


def pikhurko_construction(n: int) -> tuple[ThreeGraph, ConstructionSpec]:
    """Dense 3-graph with codegree floor(3n/4)-2 and no squared tight
    Hamilton cycle.

    Vertices split into four near-equal contiguous parts V1..V4; a triple is
    an edge iff it matches one of four intersection patterns with the parts:
    two vertices in V1, or a transversal triple through V1, or three vertices
    in one part other than V1, or a 2+1 split over two parts other than V1.
    """
    if n <= 4:
        raise ValueError(f"construction needs n > 4, got {n}")
    sizes = _part_sizes(n)
    part_of = []
    for label, size in enumerate(sizes, start=1):
        part_of.extend([label] * size)
    spec = ConstructionSpec(n, sizes, tuple(part_of))

    member = np.zeros(subset_count(n, 3), dtype=bool)
    for r in range(len(member)):
        a, b, c = unrank_triple(r)
        pa, pb, pc = part_of[a], part_of[b], part_of[c]
        in1 = (pa == 1) + (pb == 1) + (pc == 1)
        if in1 == 2:
            member[r] = True
        elif in1 == 1:
            member[r] = pa != pb and pb != pc and pa != pc
        elif in1 == 0:
            # three in one part, or a 2+1 split over two parts
            member[r] = pa == pb or pb == pc or pa == pc
        else:
            member[r] = False
    return ThreeGraph.from_membership(n, member), spec


def complete(n: int) -> ThreeGraph:
    """The complete 3-graph on n vertices."""
    if n < 3:
        raise ValueError(f"complete 3-graph needs n >= 3, got {n}")
    return ThreeGraph.from_membership(n, np.ones(subset_count(n, 3), dtype=bool))


def complete_partite(sizes) -> ThreeGraph:
    """Complete multipartite 3-graph: edges are the triples meeting three
    distinct parts (so fewer than three parts means no edges)."""
    sizes = list(sizes)
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    n = sum(sizes)
    part_of = []
    for label, size in enumerate(sizes):
        part_of.extend([label] * size)
    edges = [
        (a, b, c)
        for a, b, c in combinations(range(n), 3)
        if part_of[a] != part_of[b] and part_of[b] != part_of[c]
    ]
    return ThreeGraph(n, edges)


def random_threegraph(n: int, p: float, seed) -> ThreeGraph:
    """Include every triple independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    member = rng.random(subset_count(n, 3)) < p
    return ThreeGraph.from_membership(n, member)


def conditioned_sampler(
    n: int,
    target_codegree: int,
    seed,
    max_tries: int | None = None,
    target_edges: int | None = None,
) -> ThreeGraph | None:
    """Random deletion chain keeping every pair codegree >= target_codegree.

    Starts from the complete 3-graph and processes a seeded random
    permutation of the edges, deleting each one whose removal keeps all
    three of its pair codegrees >= the target.  Deletability only ever
    decays, so when the permutation is exhausted no deletable edge remains.
    Not a uniform sample from the conditioned ensemble.

    Args:
        max_tries: optional cap on the number of edges examined.
        target_edges: optional early stop once the edge count drops this low;
            returns None if the chain stalls before reaching it.

    Returns:
        A ThreeGraph with min codegree >= target_codegree (re-verified), or
        None when target_edges was requested but not reached.
    """
    d = target_codegree
    if n < 3:
        raise ValueError("need n >= 3")
    if not 0 <= d <= n - 2:
        raise ValueError(f"target codegree {d} not in 0..{n - 2}")
    m = subset_count(n, 3)
    member = np.ones(m, dtype=bool)
    codeg = np.full(subset_count(n, 2), n - 2, dtype=np.int32)

    order = list(range(m))
    random.Random(seed).shuffle(order)
    if max_tries is not None:
        order = order[:max_tries]

    edge_count = m
    for r in order:
        a, b, c = unrank_triple(r)
        rab, rac, rbc = rank_pair(a, b), rank_pair(a, c), rank_pair(b, c)
        if codeg[rab] > d and codeg[rac] > d and codeg[rbc] > d:
            member[r] = False
            codeg[rab] -= 1
            codeg[rac] -= 1
            codeg[rbc] -= 1
            edge_count -= 1
            if target_edges is not None and edge_count <= target_edges:
                break
    if target_edges is not None and edge_count > target_edges:
        return None
    H = ThreeGraph.from_membership(n, member)
    assert min_codegree(H) >= d, "deletion chain violated the codegree floor"
    return H
