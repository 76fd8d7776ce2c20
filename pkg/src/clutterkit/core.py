"""Clutters over a small ground set, stored as bitmasks.

Every edge is an ``int`` whose bit ``i`` marks membership of ground element
``i``.  Public functions take and return :class:`Clutter` values; the
``*_masks`` helpers work on bare edge tuples over a fixed ground so that minor
sweeps do not pay for relabelling.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CapExceeded,
    DegenerateClutter,
    DuplicateEdge,
    NotAntichain,
    ParseError,
    UnknownLabel,
)

INF = math.inf

BLOCKER_CAP = 100_000
MINOR_SWEEP_MAX_ELEMENTS = 14


def ids_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def edge_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by cardinality, then lexicographic on sorted ids."""
    return (mask.bit_count(), ids_of(mask))


def canonical(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=edge_key))


def minimal_masks(masks: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-minimal members of a family of bitmasks, canonically ordered."""
    kept: list[int] = []
    for m in sorted(set(masks), key=edge_key):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(kept)


def minimalize(families: Iterable[Iterable]) -> set[frozenset]:
    """Collect the inclusion-minimal sets of ``families`` (duplicates merged)."""
    sets = {frozenset(f) for f in families}
    return {s for s in sets if not any(t < s for t in sets)}


@dataclass(frozen=True)
class Clutter:
    """A ground set of labelled elements and an antichain of hyperedges.

    ``edges`` holds bitmasks in canonical order.  Construct through
    :func:`make_clutter` (validating) or :meth:`from_masks`.
    """

    ground: tuple[str, ...]
    edges: tuple[int, ...]

    @classmethod
    def from_masks(cls, ground, masks, *, minimal: bool = False) -> "Clutter":
        masks = minimal_masks(masks) if minimal else canonical(masks)
        return cls(tuple(ground), masks)

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    @property
    def is_degenerate(self) -> bool:
        return not self.edges or 0 in self.edges

    def index(self, label: str) -> int:
        try:
            return self.ground.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask(self, labels) -> int:
        """Bitmask for ``labels``; an ``int`` is taken to be a mask already."""
        if isinstance(labels, int):
            return labels
        if isinstance(labels, str):
            # a bare string is one label, or a run of one-character labels
            labels = [labels] if labels in self.ground else list(labels)
        return mask_of(self.index(a) for a in labels)

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in ids_of(mask))

    def edge_sets(self) -> list[tuple[str, ...]]:
        return [self.labels(e) for e in self.edges]

    def vector(self, mask: int) -> tuple[int, ...]:
        return tuple((mask >> i) & 1 for i in range(self.n))

    def same_edges(self, other: "Clutter") -> bool:
        """Equality of edge families as label sets, ignoring ground order."""
        return {frozenset(s) for s in self.edge_sets()} == {
            frozenset(s) for s in other.edge_sets()
        }

    def with_edges(self, masks) -> "Clutter":
        return Clutter.from_masks(self.ground, masks)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, item) -> bool:
        return self.mask(item) in self.edges

    def __str__(self) -> str:
        return "{" + ", ".join(fmt_set(s) for s in self.edge_sets()) + "}"


def fmt_set(labels) -> str:
    labels = list(labels)
    if all(len(a) == 1 for a in labels):
        return "".join(labels) if labels else "∅"
    return "{" + ",".join(labels) + "}"


def make_clutter(ground, families) -> Clutter:
    """Validate ``families`` over the labelled ``ground`` and build a clutter."""
    ground = tuple(str(a) for a in ground)
    if len(set(ground)) != len(ground):
        raise ParseError("ground labels must be distinct")
    index = {a: i for i, a in enumerate(ground)}
    masks = []
    seen = set()
    for fam in families:
        fam = [str(a) for a in fam]
        for a in fam:
            if a not in index:
                raise UnknownLabel(a)
        m = mask_of(index[a] for a in fam)
        if m in seen:
            raise DuplicateEdge(sorted(fam))
        seen.add(m)
        masks.append(m)
    for a, b in itertools.permutations(masks, 2):
        if a & b == a:
            raise NotAntichain(
                frozenset(ground[i] for i in ids_of(a)),
                frozenset(ground[i] for i in ids_of(b)),
            )
    return Clutter(ground, canonical(masks))


def _require_nondegenerate(C: Clutter) -> None:
    if C.is_degenerate:
        raise DegenerateClutter("operation needs a nonempty clutter without the empty edge")


# --- blocker -----------------------------------------------------------------


def blocker_masks(edges, cap: int = BLOCKER_CAP) -> tuple[int, ...]:
    """Berge's sequential transversal computation on bare masks."""
    current = [0]
    for h in sorted(edges, key=edge_key):
        nxt = []
        for t in current:
            if t & h:
                nxt.append(t)
            else:
                m = h
                while m:
                    low = m & -m
                    nxt.append(t | low)
                    m ^= low
        current = list(minimal_masks(nxt))
        if len(current) > cap:
            raise CapExceeded(f"blocker antichain grew past {cap} sets")
    return tuple(current)


def blocker(C: Clutter, cap: int = BLOCKER_CAP) -> Clutter:
    """All inclusion-minimal transversals of ``C``.

    ``blocker`` of the empty clutter is ``{∅}`` and of ``{∅}`` is empty.
    """
    return Clutter(C.ground, blocker_masks(C.edges, cap))


# --- minimum transversals and packings ---------------------------------------


def _disjoint_lower_bound(edges) -> int:
    used = 0
    count = 0
    for e in edges:
        if not e & used:
            used |= e
            count += 1
    return count


def _hitting_sets_of_size(edges, k: int, first_only: bool) -> list[int]:
    found: list[int] = []

    def dfs(chosen: int, forbidden: int, budget: int) -> bool:
        unhit = [e for e in edges if not e & chosen]
        if not unhit:
            found.append(chosen)
            return first_only
        if budget == 0 or _disjoint_lower_bound(unhit) > budget:
            return False
        h = min(unhit, key=lambda e: (e & ~forbidden).bit_count())
        options = h & ~forbidden
        tried = 0
        while options:
            low = options & -options
            if dfs(chosen | low, forbidden | tried, budget - 1):
                return True
            tried |= low
            options ^= low
        return False

    dfs(0, 0, k)
    return found


def min_transversal_masks(edges) -> tuple[int, ...]:
    """All minimum-cardinality transversals by bounded hitting-set search."""
    edges = canonical(edges)
    if not edges:
        return (0,)
    if 0 in edges:
        return ()
    k = _disjoint_lower_bound(edges)
    while True:
        sets = _hitting_sets_of_size(edges, k, first_only=False)
        if sets:
            return canonical(sets)
        k += 1


def bn_masks(edges):
    """Blocking number; 0 for the empty clutter and ``inf`` if ∅ is an edge."""
    edges = canonical(edges)
    if not edges:
        return 0
    if 0 in edges:
        return INF
    k = _disjoint_lower_bound(edges)
    while not _hitting_sets_of_size(edges, k, first_only=True):
        k += 1
    return k


def pn_masks(edges):
    """Packing number by branch and bound; mirrors the conventions of :func:`bn_masks`."""
    edges = canonical(edges)
    if not edges:
        return 0
    if 0 in edges:
        return INF
    best = 0

    def go(start: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        rest = [e for e in edges[start:] if not e & used]
        if not rest:
            return
        # disjoint edges each need at least min|e| fresh elements
        union = 0
        for e in rest:
            union |= e
        bound = min(len(rest), union.bit_count() // rest[0].bit_count())
        if count + bound <= best:
            return
        for i in range(start, len(edges)):
            e = edges[i]
            if not e & used:
                go(i + 1, used | e, count + 1)

    go(0, 0, 0)
    return best


def min_transversals(C: Clutter) -> list[int]:
    _require_nondegenerate(C)
    return list(min_transversal_masks(C.edges))


def blocking_number(C: Clutter) -> int:
    _require_nondegenerate(C)
    return bn_masks(C.edges)


def packing_number(C: Clutter) -> int:
    _require_nondegenerate(C)
    return pn_masks(C.edges)


def packs(C: Clutter) -> bool:
    return packing_number(C) == blocking_number(C)


def tilde_masks(edges) -> tuple[int, ...]:
    minb = min_transversal_masks(edges)
    return tuple(h for h in canonical(edges) if all((h & b).bit_count() == 1 for b in minb))


def tilde(C: Clutter) -> Clutter:
    """Edges meeting every minimum transversal in exactly one element."""
    _require_nondegenerate(C)
    return Clutter(C.ground, tilde_masks(C.edges))


def is_minimum_transversal_covered(C: Clutter) -> bool:
    covered = 0
    for b in min_transversals(C):
        covered |= b
    return covered == C.full


# --- minors --------------------------------------------------------------------


def minor_masks(edges, contracted: int, deleted: int) -> tuple[int, ...]:
    """``C/contracted\\deleted`` on the unchanged ground; the sets must be disjoint."""
    return minimal_masks(e & ~contracted for e in edges if not e & deleted)


def _relabel(C: Clutter, removed: int, masks) -> Clutter:
    keep = [i for i in range(C.n) if not removed >> i & 1]
    pos = {old: new for new, old in enumerate(keep)}
    out = []
    for m in masks:
        out.append(mask_of(pos[i] for i in ids_of(m)))
    return Clutter(tuple(C.ground[i] for i in keep), canonical(out))


def contract(C: Clutter, A) -> Clutter:
    a = C.mask(A)
    return _relabel(C, a, minimal_masks(e & ~a for e in C.edges))


def delete(C: Clutter, A) -> Clutter:
    a = C.mask(A)
    return _relabel(C, a, [e for e in C.edges if not e & a])


def restrict(C: Clutter, A) -> Clutter:
    return delete(C, C.full & ~C.mask(A))


def minor(C: Clutter, contracted=0, deleted=0) -> Clutter:
    a, b = C.mask(contracted), C.mask(deleted)
    if a & b:
        raise ValueError("contracted and deleted sets must be disjoint")
    return _relabel(C, a | b, minor_masks(C.edges, a, b))


# --- minor sweeps --------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    contracted: tuple[str, ...]
    deleted: tuple[str, ...]
    edges: tuple[tuple[str, ...], ...]
    reason: str

    def to_dict(self) -> dict:
        return {
            "contracted": list(self.contracted),
            "deleted": list(self.deleted),
            "edges": [list(e) for e in self.edges],
            "reason": self.reason,
        }


def minor_pairs(n: int):
    """Yield every disjoint ``(A, B)`` mask pair with ``A ∪ B`` nonempty.

    Ordered by ``|A ∪ B|`` and then by mask value, so single-element minors
    come first.
    """
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            union = mask_of(combo)
            sub = union
            while True:
                yield sub, union & ~sub
                if sub == 0:
                    break
                sub = (sub - 1) & union


class MinorCache:
    """Memoized bn/pn by edge family; one instance per sweep."""

    def __init__(self):
        self._bn: dict[tuple[int, ...], float] = {}
        self._pn: dict[tuple[int, ...], float] = {}

    def bn(self, edges: tuple[int, ...]):
        v = self._bn.get(edges)
        if v is None:
            v = self._bn[edges] = bn_masks(edges)
        return v

    def pn(self, edges: tuple[int, ...]):
        v = self._pn.get(edges)
        if v is None:
            v = self._pn[edges] = pn_masks(edges)
        return v

    def packs(self, edges: tuple[int, ...]) -> bool:
        return self.pn(edges) == self.bn(edges)


def _check_sweep_size(C: Clutter, max_elements: int) -> None:
    if C.n > max_elements:
        raise CapExceeded(f"minor sweep over {C.n} elements exceeds guard of {max_elements}")


def _witness(C, a, b, edges, reason) -> MinorWitness:
    return MinorWitness(C.labels(a), C.labels(b), tuple(C.labels(e) for e in edges), reason)


def is_minimally_non_packing(C: Clutter, max_elements: int = MINOR_SWEEP_MAX_ELEMENTS):
    """``(True, None)`` if C does not pack but every proper minor does.

    Otherwise ``(False, witness)``; a witness with empty ``contracted`` and
    ``deleted`` means C itself packs.
    """
    _require_nondegenerate(C)
    _check_sweep_size(C, max_elements)
    cache = MinorCache()
    own = minimal_masks(C.edges)
    if cache.packs(own):
        return False, _witness(C, 0, 0, own, "clutter packs")
    for a, b in minor_pairs(C.n):
        m = minor_masks(C.edges, a, b)
        if m == own:
            continue
        if not cache.packs(m):
            return False, _witness(C, a, b, m, "proper minor does not pack")
    return True, None


def has_packing_property(C: Clutter, max_elements: int = MINOR_SWEEP_MAX_ELEMENTS):
    """``(True, None)`` if C and every minor pack, else ``(False, witness)``."""
    _require_nondegenerate(C)
    _check_sweep_size(C, max_elements)
    cache = MinorCache()
    if not cache.packs(C.edges):
        return False, _witness(C, 0, 0, C.edges, "clutter does not pack")
    for a, b in minor_pairs(C.n):
        m = minor_masks(C.edges, a, b)
        if not cache.packs(m):
            return False, _witness(C, a, b, m, "minor does not pack")
    return True, None


# --- text and JSON formats ------------------------------------------------------


def parse_clt(text: str) -> Clutter:
    """Parse the ``.clt`` format: ground labels on line 1, one edge per line after."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty clutter file")
    ground = lines[0].split()
    return make_clutter(ground, [ln.split() for ln in lines[1:]])


def dump_clt(C: Clutter) -> str:
    rows = [" ".join(C.ground)]
    rows += [" ".join(s) for s in C.edge_sets()]
    return "\n".join(rows) + "\n"


def to_json_obj(C: Clutter) -> dict:
    return {"ground": list(C.ground), "edges": [list(s) for s in C.edge_sets()]}


def from_json_obj(obj) -> Clutter:
    try:
        return make_clutter(obj["ground"], obj["edges"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed clutter JSON: {exc}") from None


def loads(text: str) -> Clutter:
    """Parse either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
        return from_json_obj(obj)
    return parse_clt(text)
