"""Solution clutters D of a precore C: Conditions IM, IF, H, B, search, obstruction.

A solution clutter of ``C`` is any ``D`` with ``tilde(D) = C``.  Ideal
solutions must satisfy IM, IF and H; ideal minimally non-packing ones must
also satisfy B.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field

from . import conditions, core, generators, polytope
from .core import Clutter
from .errors import AxiomViolation, CapExceeded, ClutterError, NotApplicable
from .linalg import affine_rank


def align(C: Clutter, D: Clutter) -> Clutter:
    """Re-express ``D`` over the ground order of ``C``."""
    if D.ground == C.ground:
        return D
    if set(D.ground) != set(C.ground):
        raise ClutterError("C and D must share a ground set")
    return Clutter.from_masks(C.ground, [C.mask(D.labels(e)) for e in D.edges])


def _same_affine_hull(C: Clutter, P, Q) -> bool:
    P = [C.vector(m) for m in P]
    Q = [C.vector(m) for m in Q]
    if not P or not Q:
        return not P and not Q
    r = affine_rank(P)
    return affine_rank(Q) == r and affine_rank(P + Q) == r


def condition_IM(C: Clutter, D: Clutter) -> bool:
    """Minimum transversals of C and D span the same affine subspace."""
    D = align(C, D)
    return _same_affine_hull(C, core.min_transversals(C), core.min_transversals(D))


@dataclass(frozen=True)
class _FacetData:
    vertices: tuple  # vertex points of I(C)
    facets: tuple  # polytope.Facet values defined by some transversal of C


def _transversal_facets(C: Clutter) -> _FacetData:
    P = polytope.build_IC(C)
    V = polytope.vertices(P)
    fs = tuple(f for f in polytope.facets(P, V) if f.transversals)
    return _FacetData(V.points, fs)


def _defines(mask: int, verts, facet_vertices) -> bool:
    """``<1_B, x> >= 1`` is valid on the vertices and tight exactly on the facet."""
    ids = core.ids_of(mask)
    for k, p in enumerate(verts):
        v = sum(p[i] for i in ids)
        if v < 1:
            return False
        if (v == 1) != (k in facet_vertices):
            return False
    return True


def condition_IF(C: Clutter, D: Clutter, facet_data: _FacetData | None = None):
    """``(ok, witness)``: every transversal-defined facet of I(C) is cut out by some B in b(D),
    and every B in b(D) meets every edge of C."""
    D = align(C, D)
    fd = facet_data or _transversal_facets(C)
    bD = core.blocker_masks(D.edges)
    for b in bD:
        for h in C.edges:
            if not b & h:
                return False, {"clause": "intersection", "transversal": list(C.labels(b)),
                               "edge": list(C.labels(h))}
    for f in fd.facets:
        if not any(_defines(b, fd.vertices, f.vertices) for b in bD):
            return False, {"clause": "facet", "facet_vertices": sorted(f.vertices),
                           "defined_in_C_by": [list(C.labels(m)) for m in f.transversals]}
    return True, None


def condition_H(C: Clutter, D: Clutter):
    """``(ok, witness)``: C ⊆ D and each new edge meets some minimum transversal of C twice."""
    D = align(C, D)
    missing = [h for h in C.edges if h not in D.edges]
    if missing:
        return False, {"clause": "containment", "edge": list(C.labels(missing[0]))}
    minb = core.min_transversals(C)
    for h in D.edges:
        if h in C.edges:
            continue
        if not any((h & b).bit_count() >= 2 for b in minb):
            return False, {"clause": "double-hit", "edge": list(C.labels(h))}
    return True, None


def condition_B(C: Clutter, D: Clutter, max_elements: int = core.MINOR_SWEEP_MAX_ELEMENTS):
    """``(ok, witness)``: ``bn(C/A\\B) <= pn(D/A\\B)`` for all disjoint (A, B), not both empty."""
    D = align(C, D)
    if C.n > max_elements:
        raise CapExceeded(f"Condition B sweep over {C.n} elements exceeds {max_elements}")
    cache = core.MinorCache()
    for a, b in core.minor_pairs(C.n):
        mc = core.minor_masks(C.edges, a, b)
        bn = cache.bn(mc)
        if bn == 0:
            continue
        md = core.minor_masks(D.edges, a, b)
        pn = cache.pn(md)
        if bn > pn:
            return False, {"contracted": list(C.labels(a)), "deleted": list(C.labels(b)),
                           "bn_C": _num(bn), "pn_D": _num(pn)}
    return True, None


def _num(v):
    return "inf" if v == core.INF else int(v)


@dataclass
class SolutionReport:
    tilde_matches: bool
    ideal: bool
    mnp: bool
    im: bool
    if_: bool
    h: bool
    b: bool
    c_precore: bool
    witnesses: dict = field(default_factory=dict)

    def all_pass(self, require_mnp: bool = True) -> bool:
        ok = self.tilde_matches and self.ideal and self.im and self.if_ and self.h and self.b
        return ok and (self.mnp or not require_mnp)

    def implications_hold(self) -> bool:
        """Ideal solutions satisfy IM, IF, H; ideal MNP solutions also satisfy B."""
        if self.c_precore and self.ideal and self.tilde_matches:
            if not (self.im and self.if_ and self.h):
                return False
            if self.mnp and not self.b:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "tilde_matches": self.tilde_matches, "ideal": self.ideal, "mnp": self.mnp,
            "im": self.im, "if": self.if_, "h": self.h, "b": self.b,
            "c_precore": self.c_precore, "witnesses": self.witnesses,
        }


def check_solution(C: Clutter, D: Clutter) -> SolutionReport:
    D = align(C, D)
    w: dict = {}
    c_precore = conditions.is_precore(C).is_precore
    if not c_precore:
        w["warning"] = "C is not precore"
    td = core.tilde(D)
    tilde_matches = td.edges == C.edges
    if not tilde_matches:
        w["tilde"] = [list(C.labels(e)) for e in td.edges]
    ideal, frac = polytope.is_ideal(D)
    if not ideal:
        w["ideal"] = [str(v) for v in frac]
    mnp, mw = core.is_minimally_non_packing(D)
    if not mnp:
        w["mnp"] = mw.to_dict()
    im = condition_IM(C, D)
    if_, iw = condition_IF(C, D)
    if iw:
        w["if"] = iw
    h, hw = condition_H(C, D)
    if hw:
        w["h"] = hw
    b, bw = condition_B(C, D)
    if bw:
        w["b"] = bw
    return SolutionReport(tilde_matches, ideal, mnp, im, if_, h, b, c_precore, w)


# --- bounded search ------------------------------------------------------------------


class Status(str, enum.Enum):
    FOUND = "Found"
    EXHAUSTED = "Exhausted"
    LIMIT_REACHED = "LimitReached"


@dataclass(frozen=True)
class SearchLimits:
    max_extra_edges: int = 1
    max_edge_size: int | None = None
    node_cap: int = 1_000_000
    time_cap: float | None = None
    require_mnp: bool = True


@dataclass
class SearchOutcome:
    status: Status
    found: Clutter | None
    nodes_explored: int
    prune_stats: dict
    pool_size: int = 0

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "found": core.to_json_obj(self.found) if self.found else None,
            "nodes_explored": self.nodes_explored,
            "prune_stats": dict(sorted(self.prune_stats.items())),
            "pool_size": self.pool_size,
        }


def _if_families(C: Clutter, fd: _FacetData) -> list[list[int]]:
    """For each transversal-defined facet, every subset of E that defines it on I(C)."""
    fams = []
    for f in fd.facets:
        fams.append([s for s in range(1, C.full + 1) if _defines(s, fd.vertices, f.vertices)])
    return fams


def candidate_pool(C: Clutter, limits: SearchLimits, stats: dict | None = None):
    """Edges that may be added to C, after the static necessary filters."""
    stats = stats if stats is not None else {}
    minb = core.min_transversals(C)
    bn = len(core.ids_of(minb[0]))
    hi = C.n - bn + 1
    if limits.max_edge_size is not None:
        hi = min(hi, limits.max_edge_size)
    fd = _transversal_facets(C)
    fams = _if_families(C, fd)
    pool = []
    for size in range(2, hi + 1):
        for combo in itertools.combinations(range(C.n), size):
            h = core.mask_of(combo)
            if not any((h & b).bit_count() >= 2 for b in minb):
                stats["h_filter"] = stats.get("h_filter", 0) + 1
                continue
            if any(e & h == e or e & h == h for e in C.edges):
                stats["antichain"] = stats.get("antichain", 0) + 1
                continue
            # IM forces bn(D) = bn(C) (every minb(C) vector has coordinate sum bn),
            # so minb(D) is the part of minb(C) that still meets every new edge
            if not _same_affine_hull(C, minb, [b for b in minb if b & h]):
                stats["im"] = stats.get("im", 0) + 1
                continue
            if not all(any(s & h for s in fam) for fam in fams):
                stats["if"] = stats.get("if", 0) + 1
                continue
            pool.append(h)
    pool.sort(key=core.edge_key)
    return pool, fd, fams


def search_solutions(C: Clutter, limits: SearchLimits = SearchLimits()) -> SearchOutcome:
    """Depth-first search over ``D = C ∪ S`` with ``S`` drawn from the candidate pool.

    Every node is a candidate solution.  Failures of monotone necessary
    conditions (antichain, tilde preservation under IM, IM, the covering part
    of IF) prune the whole subtree; the remaining gates (full IF, B, ideal,
    MNP) only decide whether the node itself is a solution.  Condition B is
    only necessary for minimally non-packing solutions, so it is skipped when
    ``require_mnp`` is off.
    """
    deadline = None if limits.time_cap is None else time.monotonic() + limits.time_cap
    stats: dict = {}
    pool, fd, fams = candidate_pool(C, limits, stats)
    minb = core.min_transversals(C)
    explored = 0

    def bump(reason):
        stats[reason] = stats.get(reason, 0) + 1

    def evaluate(S) -> str:
        """Return 'found', 'prune' or 'continue'."""
        edges = C.edges + tuple(S)
        D = Clutter.from_masks(C.ground, edges)
        # tilde preservation: minb(D) must stay inside minb(C) and keep its hull
        alive = [b for b in minb if all(b & h for h in S)]
        if not _same_affine_hull(C, minb, alive):
            bump("im")
            return "prune"
        if core.tilde_masks(D.edges) != C.edges:
            bump("tilde")
            return "prune"
        fams_alive = [[s for s in fam if all(s & h for h in S)] for fam in fams]
        if not all(fams_alive):
            bump("if")
            return "prune"
        ok, _ = condition_IF(C, D, fd)
        if not ok:
            bump("if_leaf")
            return "continue"
        if limits.require_mnp:
            ok, _ = condition_B(C, D)
            if not ok:
                bump("b")
                return "continue"
        ideal, _ = polytope.is_ideal(D)
        if not ideal:
            bump("ideal")
            return "continue"
        if limits.require_mnp:
            mnp, _ = core.is_minimally_non_packing(D)
            if not mnp:
                bump("mnp")
                return "continue"
        return "found"

    # explicit stack of (S, next candidate index) for deterministic pre-order
    stack = [((), 0)]
    while stack:
        S, start = stack.pop()
        if explored >= limits.node_cap or (deadline is not None and time.monotonic() > deadline):
            return SearchOutcome(Status.LIMIT_REACHED, None, explored, stats, len(pool))
        explored += 1
        verdict = evaluate(S)
        if verdict == "found":
            D = Clutter.from_masks(C.ground, C.edges + tuple(S))
            return SearchOutcome(Status.FOUND, D, explored, stats, len(pool))
        if verdict == "prune" or len(S) >= limits.max_extra_edges:
            continue
        children = []
        for j in range(start, len(pool)):
            h = pool[j]
            if any(g & h == g or g & h == h for g in S):
                bump("antichain")
                continue
            children.append((S + (h,), j + 1))
        stack.extend(reversed(children))
    return SearchOutcome(Status.EXHAUSTED, None, explored, stats, len(pool))


# --- affine-plane obstruction -----------------------------------------------------------


@dataclass
class ObstructionReport:
    triple: tuple
    x: str
    y: str
    z: str
    X: tuple
    bn_restriction: int
    pair_edges: list
    pair_certificates: list
    components: list
    candidates: list
    xyz_minb_hits: list
    xyz_meets_each_minb_at_most_once: bool
    xyz_meets_each_minb_exactly_once: bool
    obstruction_verified: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "triple": [list(t) for t in self.triple],
            "x": self.x, "y": self.y, "z": self.z,
            "X": list(self.X),
            "bn_restriction": self.bn_restriction,
            "pair_edges": [list(p) for p in self.pair_edges],
            "pair_certificates": self.pair_certificates,
            "components": self.components,
            "candidates": self.candidates,
            "xyz_minb_hits": self.xyz_minb_hits,
            "xyz_meets_each_minb_at_most_once": self.xyz_meets_each_minb_at_most_once,
            "xyz_meets_each_minb_exactly_once": self.xyz_meets_each_minb_exactly_once,
            "obstruction_verified": self.obstruction_verified,
            "failures": self.failures,
        }


def _single(mask: int) -> int:
    assert mask.bit_count() == 1, "pairwise intersection is not a single element"
    return mask


def _components(vertices: int, pairs) -> list[tuple[int, ...]]:
    parent = {v: v for v in core.ids_of(vertices)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in pairs:
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(g)) for g in groups.values())


def valid_triples(C: Clutter):
    for a, b, c in itertools.combinations(C.edges, 3):
        if a & b & c == 0:
            yield a, b, c


def _obstruction_for(C: Clutter, triple, minb) -> ObstructionReport:
    A, B, Cp = triple
    fails = []
    z = _single(A & B)
    x = _single(B & Cp)
    y = _single(Cp & A)
    X = A | B | Cp
    if X == C.full:
        fails.append("X equals E")
    restricted = tuple(e for e in C.edges if e & X == e)
    bn_x = core.bn_masks(restricted)
    if bn_x != 2:
        fails.append(f"bn(C[X]) = {bn_x}, expected 2")

    xi, yi, zi = (core.ids_of(v)[0] for v in (x, y, z))
    pairs = [(xi, a) for a in core.ids_of(A & ~(y | z))]
    pairs += [(yi, b) for b in core.ids_of(B & ~(z | x))]
    pairs += [(zi, c) for c in core.ids_of(Cp & ~(x | y))]

    # each pair must be the trace on X of a minimum transversal or of an edge of C
    certs = []
    for u, v in pairs:
        pm = (1 << u) | (1 << v)
        src = next((("minb", t) for t in minb if t & X == pm), None)
        if src is None:
            src = next((("edge", t) for t in C.edges if t & X == pm), None)
        if src is None:
            fails.append(f"pair {C.labels(pm)} is not a forced transversal of D[X]")
            certs.append(None)
        else:
            certs.append({"pair": list(C.labels(pm)), "via": src[0],
                          "set": list(C.labels(src[1]))})

    comps = _components(X, pairs)
    comp_info = []
    deg = {v: 0 for v in core.ids_of(X)}
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    for comp in comps:
        centres = [v for v in comp if deg[v] == len(comp) - 1]
        star = len(comp) >= 2 and len(centres) >= 1 and all(
            deg[v] == 1 for v in comp if v != centres[0])
        comp_info.append({"centre": C.ground[centres[0]] if centres else None,
                          "leaves": [C.ground[v] for v in comp if not centres or v != centres[0]],
                          "star": star})
    if len(comps) != 3 or not all(c["star"] for c in comp_info):
        fails.append("pair graph is not three stars")
    if sum(len(c) for c in comps) != X.bit_count():
        fails.append("stars do not cover X")

    xyz = x | y | z
    hits = [(xyz & t).bit_count() for t in minb]
    at_most_once = all(h <= 1 for h in hits)
    exactly_once = all(h == 1 for h in hits)
    if not at_most_once:
        fails.append("{x,y,z} meets some minimum transversal twice")

    # every bipartition of X splitting each forced pair is a candidate 2-packing
    xs = core.ids_of(X)
    first, rest = xs[0], xs[1:]
    candidates = []
    for bits in range(1 << len(rest)):
        p = 1 << first
        for k, v in enumerate(rest):
            if bits >> k & 1:
                p |= 1 << v
        q = X & ~p
        if q == 0:
            continue
        if any(((p >> u) & 1) == ((p >> v) & 1) for u, v in pairs):
            continue
        reason = None
        for name, T in (("A", A), ("B", B), ("C'", Cp)):
            if p == T or q == T:
                reason = f"part equals {name}; the other part misses a transversal of D"
                break
        if reason is None and (p & ~xyz == 0 or q & ~xyz == 0) and at_most_once:
            reason = "part inside {x,y,z}; a new edge there meets no minimum transversal twice"
        candidates.append({"parts": [list(C.labels(p)), list(C.labels(q))],
                           "killed_by": reason})
    if any(c["killed_by"] is None for c in candidates):
        fails.append("some candidate 2-packing survives")

    return ObstructionReport(
        triple=tuple(C.labels(t) for t in triple),
        x=C.ground[xi], y=C.ground[yi], z=C.ground[zi], X=C.labels(X),
        bn_restriction=bn_x, pair_edges=[C.labels((1 << u) | (1 << v)) for u, v in pairs],
        pair_certificates=certs, components=comp_info, candidates=candidates,
        xyz_minb_hits=hits, xyz_meets_each_minb_at_most_once=at_most_once,
        xyz_meets_each_minb_exactly_once=exactly_once,
        obstruction_verified=not fails, failures=fails,
    )


def affine_obstruction(C: Clutter, all_triples: bool = False):
    """Mechanised case analysis showing an affine plane with bn >= 3 has no
    ideal minimally non-packing solution clutter.

    Returns the report for the canonically first triple of edges with empty
    common intersection, or a list of reports for every such triple.
    """
    ok, why = generators.verify_affine_axioms(C)
    if not ok:
        raise AxiomViolation(why)
    bn = core.blocking_number(C)
    if bn < 3:
        raise NotApplicable(f"blocking number {bn} < 3")
    minb = core.min_transversals(C)
    triples = valid_triples(C)
    if not all_triples:
        return _obstruction_for(C, next(triples), minb)
    return [_obstruction_for(C, t, minb) for t in triples]
