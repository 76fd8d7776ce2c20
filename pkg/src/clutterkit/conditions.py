"""Precore conditions on a clutter, each returned with an actionable witness.

Checks that only make sense for minimum-transversal-covered clutters with
the integral blocking condition report ``None`` (not applicable) instead of
``False`` when those hypotheses fail.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import core, exact_lp, polytope
from .core import INF, Clutter
from .errors import CapExceeded, UnboundedPolyhedron
from .linalg import affine_rank

SEPARABLE_MAX_ELEMENTS = 20


def integral_blocking(C: Clutter) -> bool:
    return exact_lp.fpn(C) == core.blocking_number(C)


def is_tilde_invariant(C: Clutter) -> bool:
    return core.tilde(C).edges == C.edges and integral_blocking(C)


def is_weak_tilde_invariant(C: Clutter) -> bool:
    if not integral_blocking(C):
        return False
    t = core.tilde(C)
    if t.is_degenerate:
        return False
    return is_tilde_invariant(t)


def tilde_full(C: Clutter):
    """``(ok, witness)``; the witness is an unsupported tilde edge or a failed hypothesis."""
    if not core.is_minimum_transversal_covered(C):
        return False, "not minimum-transversal-covered"
    if not integral_blocking(C):
        return False, "integral blocking condition fails"
    for h in core.tilde(C).edges:
        if not exact_lp.edge_in_some_max_packing(C, h):
            return False, C.labels(h)
    return True, None


def dimension_condition(C: Clutter):
    """``(ok, dim_tilde, dim_minb)`` for the tilde clutter and its minimum transversals."""
    t = core.tilde(C)
    tm = core.min_transversals(t)
    d1 = affine_rank([C.vector(h) for h in t.edges])
    d2 = affine_rank([C.vector(b) for b in tm])
    return d1 + d2 == C.n - 1, d1, d2


def _bn_or_inf(edges):
    return core.bn_masks(edges) if edges else INF


def is_separable(C: Clutter, max_elements: int = SEPARABLE_MAX_ELEMENTS):
    """``(True, (E1, E2))`` for a partition with ``bn(C[E1]) + bn(C[E2]) = bn(C)``.

    A side whose restriction has no edges counts as ``bn = inf``.
    """
    if C.n < 2:
        return False, None
    if C.n > max_elements:
        raise CapExceeded(f"separability search over {C.n} elements exceeds {max_elements}")
    bn = core.blocking_number(C)
    full = C.full
    # element 0 always on the first side, so each partition is seen once
    for bits in range(0, 1 << (C.n - 1)):
        e1 = 1 | (bits << 1)
        if e1 == full:
            continue
        e2 = full & ~e1
        left = tuple(e for e in C.edges if e & e1 == e)
        right = tuple(e for e in C.edges if e & e2 == e)
        if _bn_or_inf(left) + _bn_or_inf(right) == bn:
            return True, (C.labels(e1), C.labels(e2))
    return False, None


def hyperedge_deletion_bns(C: Clutter) -> dict:
    """``bn(C \\ H)`` for every tilde edge ``H``."""
    return {h: core.bn_masks(tuple(e for e in C.edges if not e & h)) for h in core.tilde(C).edges}


def is_hyperedge_separable(C: Clutter):
    """``(flag, witness)``; ``flag`` is ``None`` outside the mtc + IBC hypothesis."""
    if not (core.is_minimum_transversal_covered(C) and integral_blocking(C)):
        return None, "requires minimum-transversal-covered clutter with integral blocking"
    bn = core.blocking_number(C)
    for h, v in hyperedge_deletion_bns(C).items():
        if v == bn - 1:
            return True, C.labels(h)
    return False, None


def facet_transversals(C: Clutter, H) -> list[int]:
    t = core.tilde(C)
    h = C.mask(H)
    bn = core.blocking_number(C)
    others = [g for g in t.edges if g != h]
    out = []
    for b in core.blocker_masks(t.edges):
        if (b & h).bit_count() <= 1:
            continue
        if (b & ~h).bit_count() > bn - 2:
            continue
        if all((b & g).bit_count() == 1 for g in others):
            out.append(b)
    return out


def simplex_characterization(C: Clutter):
    """Both sides of the facet-transversal characterisation of integral simplices.

    ``lhs``: I(C) is an integral simplex and C is hyperedge-nonseparable.
    ``rhs``: the dimension condition holds and every edge has a facet transversal.
    """
    P = polytope.build_IC(C)
    try:
        V = polytope.vertices(P)
    except UnboundedPolyhedron:
        V = None
    if V is None or not V.points:
        lhs = False
    else:
        integral, _ = polytope.is_integral_polytope(P, V)
        sep, _ = is_hyperedge_separable(C)
        lhs = bool(integral and polytope.is_simplex(P, V) and sep is False)
    rhs = dimension_condition(C)[0] and all(facet_transversals(C, h) for h in C.edges)
    return lhs, rhs


def affinely_independent(C: Clutter, masks) -> bool:
    masks = [C.mask(m) for m in masks]
    return affine_rank([C.vector(m) for m in masks]) == len(masks) - 1


def minors_violating_ibc(C: Clutter, max_elements: int = core.MINOR_SWEEP_MAX_ELEMENTS):
    """First minor (including C) whose fpn differs from its bn, or ``None``.

    Every clutter whose minors all satisfy the integral blocking condition is
    ideal; this search supplies the witness for the contrapositive.
    """
    if C.n > max_elements:
        raise CapExceeded(f"minor sweep over {C.n} elements exceeds {max_elements}")
    seen = set()
    for a, b in itertools.chain([(0, 0)], core.minor_pairs(C.n)):
        m = core.minor_masks(C.edges, a, b)
        if m in seen or not m or 0 in m:
            continue
        seen.add(m)
        K = Clutter(C.ground, m)
        if exact_lp.fpn(K) != core.bn_masks(m):
            return core._witness(C, a, b, m, "fpn differs from bn")
    return None


# --- precore report ----------------------------------------------------------------


@dataclass
class PrecoreReport:
    mtc: bool
    ibc: bool
    fpn: Fraction
    bn: int
    tilde_fixed: bool
    ic_integral: bool | None
    fractional_vertex: tuple | None
    nonseparable: bool
    separating_partition: tuple | None
    tilde_full: bool | None
    unsupported_edge: object
    dimension_condition: bool | None
    dimensions: tuple | None
    hyperedge_nonseparable: bool | None
    hyperedge_witness: tuple | None
    unique_max_packing: bool
    is_precore: bool
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["fpn"] = str(self.fpn)
        if self.fractional_vertex is not None:
            d["fractional_vertex"] = [str(v) for v in self.fractional_vertex]
        for k in ("separating_partition", "hyperedge_witness", "dimensions"):
            if d[k] is not None:
                d[k] = [list(x) if isinstance(x, tuple) else x for x in d[k]]
        if isinstance(self.unsupported_edge, tuple):
            d["unsupported_edge"] = list(self.unsupported_edge)
        return d


def is_precore(C: Clutter) -> PrecoreReport:
    """Evaluate every precore condition.

    ``is_precore`` holds iff ``C = tilde(C)``, the integral blocking condition
    holds, I(C) is an integral polytope and C is non-separable.
    """
    notes = ["precore = tilde-fixed + IBC + I(C) integral polytope + non-separable"]
    bn = core.blocking_number(C)
    value = exact_lp.fpn(C)
    ibc = value == bn
    mtc = core.is_minimum_transversal_covered(C)
    t = core.tilde(C)
    tilde_fixed = t.edges == C.edges

    ic_integral = None
    frac = None
    if not mtc:
        ic_integral = False
        notes.append("I(C) is unbounded: minimum transversals do not cover E")
    else:
        P = polytope.build_IC(C)
        V = polytope.vertices(P)
        if not V.points:
            ic_integral = False
            notes.append("I(C) is empty")
        else:
            ic_integral, frac = polytope.is_integral_polytope(P, V)

    sep, part = is_separable(C)

    tf = uns = None
    dim_ok = dims = None
    hns = hw = None
    if mtc and ibc:
        tf, uns = tilde_full(C)
        flag, hw = is_hyperedge_separable(C)
        hns = not flag
        if not t.is_degenerate:
            ok, d1, d2 = dimension_condition(C)
            dim_ok, dims = ok, (d1, d2)
    else:
        notes.append("tilde-full, dimension and hyperedge checks need mtc and IBC")

    unique = exact_lp.is_unique_max_packing(C)
    precore = bool(tilde_fixed and ibc and ic_integral and not sep)
    return PrecoreReport(
        mtc=mtc, ibc=ibc, fpn=value, bn=bn, tilde_fixed=tilde_fixed,
        ic_integral=ic_integral, fractional_vertex=frac,
        nonseparable=not sep, separating_partition=part,
        tilde_full=tf, unsupported_edge=uns,
        dimension_condition=dim_ok, dimensions=dims,
        hyperedge_nonseparable=hns, hyperedge_witness=hw,
        unique_max_packing=unique, is_precore=precore, notes=notes,
    )
