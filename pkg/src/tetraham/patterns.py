"""Executable checkers and witness finders for the forbidden-configuration
statements about component-coloured dense 3-graphs.

Every checker can run on any instance: it reports whether the statement's
hypothesis holds there (``hypothesis_met``) and whether the conclusion does
(``conclusion_holds``), plus a structured witness when the conclusion
fails (or when a positive witness is the conclusion).  Degree thresholds
use exact integer arithmetic (9 * delta2 > 7 * n).  Scanners cap their work
by a node budget and report exhaustion separately from "no witness".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .hypergraph import ThreeGraph, bits, min_codegree
from .tight import ComponentColouring

LEMMA_IDS = (
    "FACT_3_1", "FACT_3_2", "FACT_3_4",
    "PROP_3_5", "PROP_3_6i", "PROP_3_6ii",
    "LEM_3_8i", "LEM_3_8ii", "LEM_3_8iii", "LEM_3_8iv",
    "LEM_3_9", "PROP_3_10", "LEM_3_12", "PROP_3_13",
    "LEM_3_14", "LEM_3_15", "PROP_3_16",
    "LEM_3_17i", "LEM_3_17ii", "LEM_3_17iii",
    "LEM_1_4",
)

# Forbidden coloured tight-walk patterns: walk length and per-window colour
# template over two distinct colours.  New patterns can be added here
# without touching the scanner.
WALK_PATTERNS: dict[str, tuple[int, str]] = {
    "LEM_3_14": (6, "rbrb"),
    "LEM_3_15": (7, "rbrrb"),
}


@dataclass
class LemmaReport:
    lemma_id: str
    hypothesis_met: bool
    conclusion_holds: bool
    witness: object = None
    checked_universe_size: int = 0
    budget_exhausted: bool = False

    @property
    def failed(self) -> bool:
        return self.hypothesis_met and not self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "hypothesis_met": self.hypothesis_met,
            "conclusion_holds": self.conclusion_holds,
            "witness": self.witness,
            "checked_universe_size": self.checked_universe_size,
            "budget_exhausted": self.budget_exhausted,
        }


class LemmaViolation(AssertionError):
    """Raised by assert-style entry points when a guaranteed conclusion
    fails on an instance satisfying the hypothesis."""

    def __init__(self, report: LemmaReport):
        self.report = report
        super().__init__(f"{report.lemma_id} failed with witness {report.witness}")


class _Budget:
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


def codegree_hypothesis(H: ThreeGraph) -> bool:
    """Strict threshold delta2 > 7n/9, in integers."""
    return H.n >= 2 and 9 * min_codegree(H) > 7 * H.n


# ---------------------------------------------------------------------------
# Common-neighbour selection
# ---------------------------------------------------------------------------

def _pair_masks(H: ThreeGraph, pairs) -> list[int]:
    out = []
    for p in pairs:
        a, b = sorted(p)
        if not (0 <= a < b < H.n):
            raise ValueError(f"{tuple(p)} is not a vertex pair")
        out.append(H.pair_mask(a, b))
    return out


def _drop_one_intersections(masks: list[int]) -> list[int]:
    """For each i, the AND of all masks except the i-th (prefix/suffix trick)."""
    m = len(masks)
    full = (1 << 512) - 1
    prefix = [full] * (m + 1)
    for i in range(m):
        prefix[i + 1] = prefix[i] & masks[i]
    suffix = [full] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] & masks[i]
    return [prefix[i] & suffix[i + 1] for i in range(m)]


def check_common_neighbour_9(H: ThreeGraph, pairs, assert_guarantee: bool = False):
    """Find a discardable pair P' so the remaining <= 8 pairs share a common
    neighbour.

    Returns (P', witness vertex) or None.  With delta2 > 7n/9 and at most 9
    pairs the result is guaranteed; ``assert_guarantee`` raises
    LemmaViolation if that guarantee is violated.
    """
    pairs = [tuple(sorted(p)) for p in pairs]
    if len(pairs) > 9:
        raise ValueError(f"at most 9 pairs supported, got {len(pairs)}")
    if len(set(pairs)) != len(pairs):
        raise ValueError("pairs must be distinct")
    masks = _pair_masks(H, pairs)
    for i, inter in enumerate(_drop_one_intersections(masks)):
        if inter:
            return pairs[i], next(bits(inter))
    if assert_guarantee and codegree_hypothesis(H):
        raise LemmaViolation(LemmaReport(
            "PROP_3_6i", True, False, witness={"pairs": pairs},
            checked_universe_size=len(pairs)))
    return None


def check_common_neighbour_fixed(H: ThreeGraph, pairs, fixed,
                                 assert_guarantee: bool = False):
    """Like check_common_neighbour_9, but the fixed pair is never the one
    discarded (at most 8 pairs)."""
    pairs = [tuple(sorted(p)) for p in pairs]
    fixed = tuple(sorted(fixed))
    if len(pairs) > 8:
        raise ValueError(f"at most 8 pairs supported, got {len(pairs)}")
    if len(set(pairs)) != len(pairs):
        raise ValueError("pairs must be distinct")
    if fixed not in pairs:
        raise ValueError("the fixed pair must belong to the family")
    masks = _pair_masks(H, pairs)
    for i, inter in enumerate(_drop_one_intersections(masks)):
        if pairs[i] != fixed and inter:
            return pairs[i], next(bits(inter))
    if assert_guarantee and codegree_hypothesis(H):
        raise LemmaViolation(LemmaReport(
            "PROP_3_6ii", True, False,
            witness={"pairs": pairs, "fixed": fixed},
            checked_universe_size=len(pairs)))
    return None


# ---------------------------------------------------------------------------
# Link-graph patterns
# ---------------------------------------------------------------------------

@dataclass
class ScanResult:
    witnesses: list = field(default_factory=list)
    checked: int = 0
    budget_exhausted: bool = False


def scan_link_patterns(pc: ComponentColouring, v: int,
                       budget: int | None = None) -> ScanResult:
    """Scan the coloured link of v for the four forbidden shapes:

    (i) a properly coloured 4-cycle, (ii) a 4-cycle with >= 3 colours,
    (iii) a 4-vertex path with 3 distinct edge colours, (iv) a pair through
    v seeing more than two colours.

    The colour-diversity prechecks are exact: fewer than two colours at v
    rules out (i), fewer than three rules out (ii) and (iii).
    """
    H = pc.base
    if not 0 <= v < H.n:
        raise ValueError(f"vertex {v} out of range")
    bud = _Budget(budget)
    out = ScanResult()
    colours_here = pc.colours_at(v)

    adj = [H.pair_mask(v, u) if u != v else 0 for u in range(H.n)]

    def colour(u, w):
        return pc.colour_of(v, u, w)

    # (iv)
    for u in range(H.n):
        if u == v or not adj[u]:
            continue
        cs = pc.colours_of_pair(u, v)
        out.checked += 1
        if len(cs) > 2:
            out.witnesses.append({
                "item": "iv", "vertices": (u,), "colours": tuple(sorted(cs)),
            })

    # (i)/(ii): 4-cycles, each enumerated once (least vertex first, then the
    # smaller neighbour before the larger)
    if len(colours_here) >= 2:
        for u0 in range(H.n):
            if u0 == v:
                continue
            nbrs0 = [u for u in bits(adj[u0]) if u > u0]
            for i1, u1 in enumerate(nbrs0):
                for u3 in nbrs0[i1 + 1:]:
                    common = adj[u1] & adj[u3]
                    for u2 in bits(common & ~((1 << (u0 + 1)) - 1)):
                        if u2 == u1 or u2 == u3:
                            continue
                        if not bud.take():
                            out.budget_exhausted = True
                            out.checked += bud.spent
                            return out
                        c01, c12 = colour(u0, u1), colour(u1, u2)
                        c23, c30 = colour(u2, u3), colour(u3, u0)
                        if (c01 != c12 and c12 != c23 and c23 != c30
                                and c30 != c01):
                            out.witnesses.append({
                                "item": "i", "vertices": (u0, u1, u2, u3),
                                "colours": (c01, c12, c23, c30),
                            })
                        if len(colours_here) >= 3 and len({c01, c12, c23, c30}) >= 3:
                            out.witnesses.append({
                                "item": "ii", "vertices": (u0, u1, u2, u3),
                                "colours": (c01, c12, c23, c30),
                            })

    # (iii): 4-vertex paths w-x-y-z, canonicalised by w < z
    if len(colours_here) >= 3:
        for x in range(H.n):
            if x == v:
                continue
            for y in bits(adj[x]):
                for w in bits(adj[x]):
                    if w == y:
                        continue
                    for z in bits(adj[y] & ~((1 << (w + 1)) - 1)):
                        if z == x or z == w:
                            continue
                        if not bud.take():
                            out.budget_exhausted = True
                            out.checked += bud.spent
                            return out
                        cs = (colour(w, x), colour(x, y), colour(y, z))
                        if len(set(cs)) == 3:
                            out.witnesses.append({
                                "item": "iii", "vertices": (w, x, y, z),
                                "colours": cs,
                            })
    out.checked += bud.spent
    return out


def link_pattern_reports(pc: ComponentColouring,
                         budget: int | None = None) -> list[LemmaReport]:
    """Aggregate scan_link_patterns over all vertices into one report per
    item (tags LEM_3_8i..iv)."""
    hyp = codegree_hypothesis(pc.base)
    by_item: dict[str, LemmaReport] = {
        item: LemmaReport(f"LEM_3_8{item}", hyp, True)
        for item in ("i", "ii", "iii", "iv")
    }
    for v in range(pc.n):
        res = scan_link_patterns(pc, v, budget)
        for item, rep in by_item.items():
            rep.checked_universe_size += res.checked
            rep.budget_exhausted |= res.budget_exhausted
        for w in res.witnesses:
            rep = by_item[w["item"]]
            if rep.conclusion_holds:
                rep.conclusion_holds = False
                rep.witness = dict(w, link_vertex=v)
    return [by_item[i] for i in ("i", "ii", "iii", "iv")]


# ---------------------------------------------------------------------------
# Component-count statements
# ---------------------------------------------------------------------------

def check_vertex_colour_bound(pc: ComponentColouring) -> LemmaReport:
    """Every vertex lies in at most two tight components (LEM_3_9)."""
    rep = LemmaReport("LEM_3_9", codegree_hypothesis(pc.base), True,
                      checked_universe_size=pc.n)
    for v in range(pc.n):
        if len(pc.colours_at(v)) > 2:
            rep.conclusion_holds = False
            rep.witness = {"vertex": v,
                           "colours": tuple(sorted(pc.colours_at(v)))}
            break
    return rep


def check_component_count(pc: ComponentColouring) -> tuple[LemmaReport, LemmaReport]:
    """Reports for the two-component bound (LEM_3_12) and for tight
    connectivity of the tetrahedral graph (LEM_1_4)."""
    hyp = codegree_hypothesis(pc.base)
    count = pc.component_count
    bound = LemmaReport("LEM_3_12", hyp, count <= 2,
                        witness=None if count <= 2 else {"component_count": count},
                        checked_universe_size=count)
    connected = LemmaReport("LEM_1_4", hyp, count == 1,
                            witness=None if count == 1 else {"component_count": count},
                            checked_universe_size=count)
    return bound, connected


# ---------------------------------------------------------------------------
# Facts about the colouring
# ---------------------------------------------------------------------------

def check_adjacent_edge_components(pc: ComponentColouring,
                                   budget: int | None = None) -> LemmaReport:
    """Two edges sharing two vertices whose five boundary pairs have a
    common neighbour must share a component (FACT_3_1).  Holds whenever the
    colouring is defined, with no degree hypothesis."""
    H = pc.base
    rep = LemmaReport("FACT_3_1", True, True)
    bud = _Budget(budget)
    for b in range(1, H.n):
        for a in range(b):
            mask = H.pair_mask(a, b)
            if not mask:
                continue
            cs = list(bits(mask))
            for i, w in enumerate(cs):
                for d in cs[i + 1:]:
                    if not bud.take():
                        rep.budget_exhausted = True
                        rep.checked_universe_size = bud.spent
                        return rep
                    inter = (mask
                             & H.pair_mask(a, w) & H.pair_mask(b, w)
                             & H.pair_mask(a, d) & H.pair_mask(b, d))
                    if inter and pc.colour_of(a, b, w) != pc.colour_of(a, b, d):
                        rep.conclusion_holds = False
                        rep.witness = {
                            "edges": ((a, b, w), (a, b, d)),
                            "common_neighbour": next(bits(inter)),
                        }
                        rep.checked_universe_size = bud.spent
                        return rep
    rep.checked_universe_size = bud.spent
    return rep


def check_colour_sets_intersect(pc: ComponentColouring) -> LemmaReport:
    """Any two vertices share a component (FACT_3_2); needs delta2 > 0."""
    hyp = pc.min_codegree() > 0
    rep = LemmaReport("FACT_3_2", hyp, True,
                      checked_universe_size=pc.n * (pc.n - 1) // 2)
    for v in range(1, pc.n):
        for u in range(v):
            if not pc.colours_at(u) & pc.colours_at(v):
                rep.conclusion_holds = False
                rep.witness = {"vertices": (u, v)}
                return rep
    return rep


def check_tetra_degree_bound(H: ThreeGraph) -> LemmaReport:
    """Every edge lies in at least 3*delta2 - 2n - 3 tetrahedra (FACT_3_4,
    absolute inclusion-exclusion form; trivially true when negative)."""
    bound = 3 * min_codegree(H) - 2 * H.n - 3
    rep = LemmaReport("FACT_3_4", True, True,
                      checked_universe_size=H.edge_count)
    for a, b, c in H.edge_tuples():
        deg = (H.pair_mask(a, b) & H.pair_mask(a, c) & H.pair_mask(b, c)).bit_count()
        if deg < bound:
            rep.conclusion_holds = False
            rep.witness = {"edge": (a, b, c), "tetra_degree": deg, "bound": bound}
            return rep
    return rep


def check_multicolour_pair_exists(pc: ComponentColouring,
                                  budget: int | None = None) -> LemmaReport:
    """PROP_3_5: with >= 2 components (under the degree threshold) some pair
    lies in two of them; moreover every two-coloured pair can route around
    any of its neighbours in the other colour.

    The hypothesis may be unsatisfiable at small n; the report then states
    vacuous truth rather than guessing."""
    H = pc.base
    hyp = codegree_hypothesis(H) and pc.component_count >= 2
    rep = LemmaReport("PROP_3_5", hyp, True)
    bud = _Budget(budget)

    multicolour_pairs = []
    for v in range(1, pc.n):
        for u in range(v):
            if len(pc.colours_of_pair(u, v)) >= 2:
                multicolour_pairs.append((u, v))
    if pc.component_count >= 2 and not multicolour_pairs:
        rep.conclusion_holds = False
        rep.witness = {"reason": "no pair lies in two components"}
        return rep

    for x, y in multicolour_pairs:
        cols = sorted(pc.colours_of_pair(x, y))
        for t1 in cols:
            for t2 in cols:
                if t1 == t2:
                    continue
                for z in bits(pc.coloured_pair_mask(x, y, t1)):
                    if not bud.take():
                        rep.budget_exhausted = True
                        rep.checked_universe_size = bud.spent
                        return rep
                    w_mask = (pc.coloured_pair_mask(x, y, t2)
                              & H.pair_mask(y, z) & ~(1 << z))
                    if not w_mask:
                        rep.conclusion_holds = False
                        rep.witness = {"pair": (x, y), "components": (t1, t2),
                                       "neighbour": z}
                        rep.checked_universe_size = bud.spent
                        return rep
    rep.checked_universe_size = bud.spent
    return rep


# ---------------------------------------------------------------------------
# Two-colour forbidden configurations
# ---------------------------------------------------------------------------

def _ordered_colour_pairs(pc: ComponentColouring) -> list[tuple[int, int]]:
    cols = range(pc.component_count)
    return [(r, b) for r in cols for b in cols if r != b]


def _two_colour_hypothesis(pc: ComponentColouring) -> bool:
    return codegree_hypothesis(pc.base) and pc.component_count == 2


def scan_exclusive_pair_colourings(pc: ComponentColouring) -> LemmaReport:
    """PROP_3_10: no three vertices whose colour sets are the three distinct
    2-subsets of a 3-set of components.  Vacuous below three components but
    still executed."""
    hyp = codegree_hypothesis(pc.base)
    rep = LemmaReport("PROP_3_10", hyp, True)
    by_set: dict[frozenset, int] = {}
    examples: dict[frozenset, int] = {}
    for v in range(pc.n):
        s = pc.colours_at(v)
        if len(s) == 2:
            by_set[s] = by_set.get(s, 0) + 1
            examples.setdefault(s, v)
    rep.checked_universe_size = len(by_set)
    for trio in combinations(sorted(range(pc.component_count)), 3):
        t1, t2, t3 = trio
        needed = [frozenset((t2, t3)), frozenset((t1, t3)), frozenset((t1, t2))]
        if all(s in by_set for s in needed):
            rep.conclusion_holds = False
            rep.witness = {"components": trio,
                           "vertices": tuple(examples[s] for s in needed)}
            break
    return rep


def scan_balanced_bipyramids(pc: ComponentColouring,
                             budget: int | None = None) -> LemmaReport:
    """PROP_3_13: no two apexes over a common triangle of pairs whose six
    edges split three-and-three between two components."""
    H = pc.base
    rep = LemmaReport("PROP_3_13", _two_colour_hypothesis(pc), True)
    bud = _Budget(budget)
    for y1, y2, y3 in combinations(range(H.n), 3):
        common = (H.pair_mask(y1, y2) & H.pair_mask(y1, y3)
                  & H.pair_mask(y2, y3))
        if common.bit_count() < 2:
            continue
        apexes = list(bits(common))
        for i, x in enumerate(apexes):
            cx = (pc.colour_of(x, y1, y2), pc.colour_of(x, y2, y3),
                  pc.colour_of(x, y1, y3))
            for z in apexes[i + 1:]:
                if not bud.take():
                    rep.budget_exhausted = True
                    rep.checked_universe_size = bud.spent
                    return rep
                cz = (pc.colour_of(z, y1, y2), pc.colour_of(z, y2, y3),
                      pc.colour_of(z, y1, y3))
                tally: dict[int, int] = {}
                for c in cx + cz:
                    tally[c] = tally.get(c, 0) + 1
                if len(tally) == 2 and set(tally.values()) == {3}:
                    rep.conclusion_holds = False
                    rep.witness = {"apexes": (x, z), "triangle": (y1, y2, y3),
                                   "colours": {"x": cx, "z": cz}}
                    rep.checked_universe_size = bud.spent
                    return rep
    rep.checked_universe_size = bud.spent
    return rep


def find_coloured_walks(pc: ComponentColouring, window_colours,
                        budget: _Budget, collect_all: bool = False):
    """Tight walks of the coloured pattern given by window_colours (one
    component id per consecutive window of three).  Vertices may repeat
    across windows but not within an edge."""
    H = pc.base
    length = len(window_colours) + 2
    found = []

    def dfs(seq):
        if len(seq) == length:
            found.append(tuple(seq))
            return not collect_all
        want = window_colours[len(seq) - 2]
        cand = pc.coloured_pair_mask(seq[-2], seq[-1], want)
        for v in bits(cand):
            if not budget.take():
                return True
            seq.append(v)
            if dfs(seq):
                return True
            seq.pop()
        return False

    first = window_colours[0]
    for (a, b, c), r in zip(pc.base.edge_tuples(), pc.base.edge_ranks):
        if pc.colour_of_edge[int(r)] != first:
            continue
        for seq0 in ((a, b, c), (a, c, b), (b, a, c),
                     (b, c, a), (c, a, b), (c, b, a)):
            if not budget.take():
                return found
            if dfs(list(seq0)):
                if not collect_all:
                    return found
                if budget.exhausted:
                    return found
    return found


def scan_walk_pattern(pc: ComponentColouring, lemma_id: str,
                      budget: int | None = None) -> LemmaReport:
    """Forbidden coloured tight-walk patterns from the WALK_PATTERNS
    catalog (LEM_3_14, LEM_3_15)."""
    length, template = WALK_PATTERNS[lemma_id]
    rep = LemmaReport(lemma_id, _two_colour_hypothesis(pc), True)
    bud = _Budget(budget)
    for r, b in _ordered_colour_pairs(pc):
        colours = tuple(r if ch == "r" else b for ch in template)
        assert len(colours) == length - 2
        walks = find_coloured_walks(pc, colours, bud)
        if walks:
            rep.conclusion_holds = False
            rep.witness = {"walk": walks[0], "components": (r, b)}
            break
        if bud.exhausted:
            rep.budget_exhausted = True
            break
    rep.checked_universe_size = bud.spent
    return rep


def scan_colour_forcing(pc: ComponentColouring,
                        budget: int | None = None) -> LemmaReport:
    """PROP_3_16: whenever xyz and wyz carry one colour and wxy the other,
    the vertex z sees only the first colour."""
    H = pc.base
    rep = LemmaReport("PROP_3_16", _two_colour_hypothesis(pc), True)
    bud = _Budget(budget)
    for e, r in zip(H.edge_tuples(), H.edge_ranks):
        col_r = pc.colour_of_edge[int(r)]
        for yi in range(3):
            y = e[yi]
            rest = tuple(v for v in e if v != y)
            for x, z in (rest, rest[::-1]):
                w_mask = H.pair_mask(x, y) & H.pair_mask(y, z)
                for w in bits(w_mask):
                    if w == z or w == x:
                        continue
                    if not bud.take():
                        rep.budget_exhausted = True
                        rep.checked_universe_size = bud.spent
                        return rep
                    if (pc.colour_of(w, x, y) != col_r
                            and pc.colour_of(w, y, z) == col_r
                            and pc.colours_at(z) != frozenset((col_r,))):
                        rep.conclusion_holds = False
                        rep.witness = {
                            "x": x, "y": y, "z": z, "w": w,
                            "edge_colour": col_r,
                            "colours_at_z": tuple(sorted(pc.colours_at(z))),
                        }
                        rep.checked_universe_size = bud.spent
                        return rep
    rep.checked_universe_size = bud.spent
    return rep


def check_spanning_unique(pc: ComponentColouring) -> LemmaReport:
    """LEM_3_17(i): exactly one of the two components spans every vertex."""
    spanning = sorted(pc.spanning_ids())
    rep = LemmaReport("LEM_3_17i", _two_colour_hypothesis(pc),
                      len(spanning) == 1,
                      witness=None if len(spanning) == 1 else
                      {"spanning_components": spanning},
                      checked_universe_size=pc.component_count)
    return rep


def check_bicoloured_pair_neighbourhoods(pc: ComponentColouring) -> LemmaReport:
    """LEM_3_17(ii): for each pair in both colours, its spanning-colour
    neighbours see only the spanning colour."""
    rep = LemmaReport("LEM_3_17ii", _two_colour_hypothesis(pc), True)
    roles = pc.two_colour_roles()
    spanning = [roles[0]] if roles else sorted(pc.spanning_ids())
    checked = 0
    for r in spanning:
        only_r = frozenset((r,))
        for v in range(1, pc.n):
            for u in range(v):
                cols = pc.colours_of_pair(u, v)
                if len(cols) < 2 or r not in cols:
                    continue
                checked += 1
                for z in bits(pc.coloured_pair_mask(u, v, r)):
                    if pc.colours_at(z) != only_r:
                        rep.conclusion_holds = False
                        rep.witness = {
                            "pair": (u, v), "spanning": r, "neighbour": z,
                            "colours_at_neighbour": tuple(sorted(pc.colours_at(z))),
                        }
                        rep.checked_universe_size = checked
                        return rep
    rep.checked_universe_size = checked
    return rep


def find_monochromatic_k5(pc: ComponentColouring,
                          budget: int | None = None) -> LemmaReport:
    """LEM_3_17(iii): positive search for five vertices all of whose triples
    are edges of the non-spanning colour; conclusion_holds iff one is found."""
    H = pc.base
    rep = LemmaReport("LEM_3_17iii", _two_colour_hypothesis(pc), False)
    bud = _Budget(budget)
    roles = pc.two_colour_roles()
    if roles:
        targets = [roles[1]]
    else:
        spanning = pc.spanning_ids()
        targets = [c for c in range(pc.component_count) if c not in spanning]
    for colour in targets:
        cmask = {}

        def cm(a, b):
            key = (a, b) if a < b else (b, a)
            if key not in cmask:
                cmask[key] = pc.coloured_pair_mask(*key, colour)
            return cmask[key]

        for (a, b, c), r in zip(H.edge_tuples(), H.edge_ranks):
            if pc.colour_of_edge[int(r)] != colour:
                continue
            after_c = ~((1 << (c + 1)) - 1)
            for d in bits(cm(a, b) & cm(a, c) & cm(b, c) & after_c):
                if not bud.take():
                    rep.budget_exhausted = True
                    rep.checked_universe_size = bud.spent
                    return rep
                emask = (cm(a, b) & cm(a, c) & cm(b, c)
                         & cm(a, d) & cm(b, d) & cm(c, d)
                         & ~((1 << (d + 1)) - 1))
                if emask:
                    e = next(bits(emask))
                    rep.conclusion_holds = True
                    rep.witness = {"vertices": (a, b, c, d, e),
                                   "component": colour}
                    rep.checked_universe_size = bud.spent
                    return rep
    rep.checked_universe_size = bud.spent
    return rep


def scan_two_colour_patterns(pc: ComponentColouring,
                             budget: int | None = None) -> list[LemmaReport]:
    """One report per two-colour statement.  Hypotheses require the degree
    threshold and exactly two components; the scans run regardless."""
    return [
        scan_exclusive_pair_colourings(pc),
        scan_balanced_bipyramids(pc, budget),
        scan_walk_pattern(pc, "LEM_3_14", budget),
        scan_walk_pattern(pc, "LEM_3_15", budget),
        scan_colour_forcing(pc, budget),
        check_spanning_unique(pc),
        check_bicoloured_pair_neighbourhoods(pc),
        find_monochromatic_k5(pc, budget),
    ]


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

def _report_common_neighbour(H, lemma_id, seed, families=32):
    """Sampled soundness report for the common-neighbour selectors."""
    import random as _random

    rng = _random.Random(seed)
    hyp = codegree_hypothesis(H)
    rep = LemmaReport(lemma_id, hyp, True, checked_universe_size=families)
    all_pairs = list(combinations(range(H.n), 2))
    want = 9 if lemma_id == "PROP_3_6i" else 8
    for _ in range(families):
        fam = rng.sample(all_pairs, min(want, len(all_pairs)))
        if lemma_id == "PROP_3_6i":
            got = check_common_neighbour_9(H, fam)
        else:
            got = check_common_neighbour_fixed(H, fam, fam[0])
        if got is None and hyp:
            rep.conclusion_holds = False
            rep.witness = {"pairs": fam}
            break
        if got is not None:
            discarded, x = got
            ok = all((H.pair_mask(*p) >> x) & 1
                     for p in fam if p != discarded)
            if not ok:
                rep.conclusion_holds = False
                rep.witness = {"pairs": fam, "bad_witness": [discarded, x]}
                break
    return rep


def run_lemma(H: ThreeGraph, pc: ComponentColouring | None, lemma_id: str,
              budget: int | None = None, seed=0) -> LemmaReport:
    """Run one checker by its tag.  ``pc`` may be None when the tag only
    needs the host graph."""
    if lemma_id not in LEMMA_IDS:
        raise ValueError(f"unknown lemma tag {lemma_id!r}")
    if lemma_id == "FACT_3_4":
        return check_tetra_degree_bound(H)
    if lemma_id in ("PROP_3_6i", "PROP_3_6ii"):
        return _report_common_neighbour(H, lemma_id, seed)
    if pc is None:
        from .tight import component_colouring
        pc = component_colouring(H)
    if lemma_id == "FACT_3_1":
        return check_adjacent_edge_components(pc, budget)
    if lemma_id == "FACT_3_2":
        return check_colour_sets_intersect(pc)
    if lemma_id == "PROP_3_5":
        return check_multicolour_pair_exists(pc, budget)
    if lemma_id.startswith("LEM_3_8"):
        item = lemma_id[len("LEM_3_8"):]
        reports = {r.lemma_id: r for r in link_pattern_reports(pc, budget)}
        return reports[f"LEM_3_8{item}"]
    if lemma_id == "LEM_3_9":
        return check_vertex_colour_bound(pc)
    if lemma_id == "LEM_3_12":
        return check_component_count(pc)[0]
    if lemma_id == "LEM_1_4":
        return check_component_count(pc)[1]
    if lemma_id == "PROP_3_10":
        return scan_exclusive_pair_colourings(pc)
    if lemma_id == "PROP_3_13":
        return scan_balanced_bipyramids(pc, budget)
    if lemma_id in WALK_PATTERNS:
        return scan_walk_pattern(pc, lemma_id, budget)
    if lemma_id == "PROP_3_16":
        return scan_colour_forcing(pc, budget)
    if lemma_id == "LEM_3_17i":
        return check_spanning_unique(pc)
    if lemma_id == "LEM_3_17ii":
        return check_bicoloured_pair_neighbourhoods(pc)
    if lemma_id == "LEM_3_17iii":
        return find_monochromatic_k5(pc, budget)
    raise AssertionError(f"unhandled tag {lemma_id}")
