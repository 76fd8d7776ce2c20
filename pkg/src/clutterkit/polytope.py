"""Exact polyhedra with 0/1 constraint rows: I(C), blocking polyhedra, vertices.

Vertices come from the double description method run on integer data after
the equality subspace has been parametrised away.  A slower basis
enumeration is kept as an independent check.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import Clutter
from .errors import CapExceeded, EmptyInput, UnboundedPolyhedron
from .linalg import affine_rank, dot, nullspace, rank, solve

MAX_ELEMENTS = 16
MAX_RAYS = 200_000


class Tag(str, enum.Enum):
    MIN_TRANSVERSAL = "MinTransversal"  # <1_B, x> = rhs
    TRANSVERSAL = "Transversal"  # <1_B, x> >= rhs
    NONNEG = "NonNeg"  # x_a >= 0
    BOX = "Box"  # x_a <= rhs


@dataclass(frozen=True)
class Constraint:
    mask: int
    rhs: Fraction
    tag: Tag

    def row(self, n: int) -> list[int]:
        return [self.mask >> i & 1 for i in range(n)]

    def value(self, x) -> Fraction:
        return sum((x[i] for i in core.ids_of(self.mask)), Fraction(0))

    def satisfied(self, x) -> bool:
        v = self.value(x)
        if self.tag is Tag.MIN_TRANSVERSAL:
            return v == self.rhs
        if self.tag is Tag.BOX:
            return v <= self.rhs
        return v >= self.rhs

    def tight(self, x) -> bool:
        return self.value(x) == self.rhs


@dataclass(frozen=True)
class HPolyhedron:
    ambient_dim: int
    equalities: tuple[Constraint, ...]
    inequalities: tuple[Constraint, ...]
    labels: tuple[str, ...] = ()

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return self.equalities + self.inequalities

    def contains(self, x) -> bool:
        return all(c.satisfied(x) for c in self.constraints)

    def to_dict(self) -> dict:
        def enc(c):
            return {"support": [self.label(i) for i in core.ids_of(c.mask)],
                    "rhs": str(c.rhs), "tag": c.tag.value}
        return {
            "ambient_dim": self.ambient_dim,
            "equalities": [enc(c) for c in self.equalities],
            "inequalities": [enc(c) for c in self.inequalities],
        }

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)


def nonneg_rows(n: int) -> list[Constraint]:
    return [Constraint(1 << i, Fraction(0), Tag.NONNEG) for i in range(n)]


def box_rows(n: int) -> list[Constraint]:
    return [Constraint(1 << i, Fraction(1), Tag.BOX) for i in range(n)]


def make_polyhedron(n, equalities=(), geq=(), nonneg=True, box=False, labels=()) -> HPolyhedron:
    """Convenience builder from masks: ``<1_S,x> = 1`` and ``<1_S,x> >= 1`` rows."""
    eqs = tuple(Constraint(m, Fraction(1), Tag.MIN_TRANSVERSAL) for m in equalities)
    ineqs = [Constraint(m, Fraction(1), Tag.TRANSVERSAL) for m in geq]
    if nonneg:
        ineqs += nonneg_rows(n)
    if box:
        ineqs += box_rows(n)
    return HPolyhedron(n, eqs, tuple(ineqs), tuple(labels))


def build_IC(C: Clutter) -> HPolyhedron:
    """Face of the blocking polyhedron where every minimum transversal is tight."""
    if C.n > MAX_ELEMENTS:
        raise CapExceeded(f"{C.n} elements exceeds polytope guard {MAX_ELEMENTS}")
    core._require_nondegenerate(C)
    b = core.blocker_masks(C.edges)
    k = min(t.bit_count() for t in b)
    minb = [t for t in b if t.bit_count() == k]
    rest = [t for t in b if t.bit_count() > k]
    return make_polyhedron(C.n, minb, rest, labels=C.ground)


def blocking_polyhedron(C: Clutter, box: bool = False) -> HPolyhedron:
    """``{x >= 0 : <1_H, x> >= 1 for H in C}``, optionally cut by ``x <= 1``."""
    return make_polyhedron(C.n, (), C.edges, box=box, labels=C.ground)


# --- vertex enumeration ------------------------------------------------------------


@dataclass(frozen=True)
class VertexSet:
    points: tuple[tuple[Fraction, ...], ...]
    incidence: tuple[frozenset, ...]  # indices into P.constraints that are tight

    def __len__(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "points": [[str(v) for v in p] for p in self.points],
            "tight": [sorted(s) for s in self.incidence],
        }


def _lcm_row(row) -> list[int]:
    den = 1
    for v in row:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in row]


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g > 1:
        v = [a // g for a in v]
    return tuple(v)


def _double_description(G: list[list[int]], cap: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{w : G w <= 0}``.

    Raises ``UnboundedPolyhedron`` if the cone has a lineality space.
    """
    dim = len(G[0])
    chosen: list[int] = []
    for i in range(len(G)):
        if rank([G[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise UnboundedPolyhedron("constraint system has a nontrivial lineality space")
    # initial simplicial cone: rays are the columns of -inv(G_S)
    rays: list[tuple[tuple[int, ...], int]] = []
    sub = [[Fraction(v) for v in G[j]] for j in chosen]
    for col in range(dim):
        rhs = [Fraction(-1 if r == col else 0) for r in range(dim)]
        r = solve(sub, rhs)
        vec = _primitive(_lcm_row(r))
        zero = 0
        for pos, j in enumerate(chosen):
            if pos != col:
                zero |= 1 << j
        rays.append((vec, zero))
    processed = set(chosen)
    for i in range(len(G)):
        if i in processed:
            continue
        g = G[i]
        bit = 1 << i
        pos, neg, keep = [], [], []
        for vec, zero in rays:
            v = sum(a * b for a, b in zip(g, vec))
            if v > 0:
                pos.append((vec, zero, v))
            elif v < 0:
                neg.append((vec, zero, v))
                keep.append((vec, zero))
            else:
                keep.append((vec, zero | bit))
        if pos:
            zeros = [z for _, z in rays]
            new = []
            need = dim - 2
            for pv, pz, pval in pos:
                for nv, nz, nval in neg:
                    common = pz & nz
                    if common.bit_count() < need:
                        continue
                    adjacent = True
                    for z in zeros:
                        if z & common == common and z != pz and z != nz:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vec = _primitive([pval * b - nval * a for a, b in zip(pv, nv)])
                    new.append((vec, common | bit))
            rays = keep + new
            if len(rays) > cap:
                raise CapExceeded(f"double description exceeded {cap} rays")
        else:
            rays = [(vec, z | bit) if sum(a * b for a, b in zip(g, vec)) == 0 else (vec, z)
                    for vec, z in rays]
        processed.add(i)
    return [vec for vec, _ in rays]


def _rows_as_leq(P: HPolyhedron, n: int, extra_box: bool):
    """Inequalities written as ``a @ x <= b`` with their constraint indices."""
    out = []
    for c in P.inequalities:
        row = [Fraction(v) for v in c.row(n)]
        if c.tag is Tag.BOX:
            out.append((row, c.rhs))
        else:
            out.append(([-v for v in row], -c.rhs))
    if extra_box:
        out += [([Fraction(int(i == j)) for j in range(n)], Fraction(1)) for i in range(n)]
    return out


def vertices(P: HPolyhedron, box: bool = False, cap: int = MAX_RAYS) -> VertexSet:
    """All vertices of ``P``, exact and canonically ordered.

    With ``box=True`` the polyhedron is first intersected with ``x <= 1``; the
    reported incidence then still refers to ``P.constraints`` only, so callers
    can tell which points are vertices of ``P`` itself.
    """
    n = P.ambient_dim
    if n > MAX_ELEMENTS:
        raise CapExceeded(f"ambient dimension {n} exceeds guard {MAX_ELEMENTS}")
    eq_rows = [[Fraction(v) for v in c.row(n)] for c in P.equalities]
    eq_rhs = [c.rhs for c in P.equalities]
    if eq_rows:
        x0 = solve(eq_rows, eq_rhs)
        if x0 is None:
            return VertexSet((), ())
        N = nullspace(eq_rows, n)
    else:
        x0 = [Fraction(0)] * n
        N = nullspace([], n)
    d = len(N)
    leq = _rows_as_leq(P, n, box)
    points = []
    if d == 0:
        if all(dot(a, x0) <= b for a, b in leq):
            points.append(tuple(x0))
    else:
        G = []
        for a, b in leq:
            g = [dot(a, col) for col in N]
            h = b - dot(a, x0)
            G.append(_lcm_row(g + [-h]))
        G.append([0] * d + [-1])
        G = [row for row in G if any(row)] or [[0] * d + [-1]]
        try:
            rays = _double_description(G, cap)
        except UnboundedPolyhedron:
            if _is_empty(P, box):
                return VertexSet((), ())
            raise
        finite = [r for r in rays if r[-1] > 0]
        if finite and any(r[-1] == 0 for r in rays):
            raise UnboundedPolyhedron("polyhedron has recession directions; pass box=True")
        for r in finite:
            s = r[-1]
            t = [Fraction(v, s) for v in r[:-1]]
            x = tuple(x0[i] + sum(N[k][i] * t[k] for k in range(d)) for i in range(n))
            points.append(x)
    points = sorted(set(points))
    cons = P.constraints
    incidence = tuple(
        frozenset(k for k, c in enumerate(cons) if c.tight(p)) for p in points
    )
    return VertexSet(tuple(points), incidence)


def _is_empty(P: HPolyhedron, box: bool) -> bool:
    from .errors import Infeasible
    from .exact_lp import EQ, GE, LE, solve_lp

    n = P.ambient_dim
    rows, rhs, senses = [], [], []
    for c in P.constraints:
        if c.tag is Tag.NONNEG:
            continue
        rows.append(c.row(n))
        rhs.append(c.rhs)
        senses.append({Tag.MIN_TRANSVERSAL: EQ, Tag.TRANSVERSAL: GE, Tag.BOX: LE}[c.tag])
    if box:
        for i in range(n):
            rows.append([int(i == j) for j in range(n)])
            rhs.append(1)
            senses.append(LE)
    if not rows:
        return False
    try:
        solve_lp(rows, rhs, [0] * n, senses)
    except Infeasible:
        return True
    return False


def vertex_certificates_ok(P: HPolyhedron, V: VertexSet) -> bool:
    """Every point is feasible and its tight rows have rank ``ambient_dim``."""
    n = P.ambient_dim
    cons = P.constraints
    for p, tight in zip(V.points, V.incidence):
        if not P.contains(p):
            return False
        if rank([cons[k].row(n) for k in tight]) != n:
            return False
    return True


def vertices_by_basis_enumeration(P: HPolyhedron, box: bool = False) -> list[tuple[Fraction, ...]]:
    """Brute-force vertex oracle: solve every nonsingular ``n x n`` row subsystem."""
    n = P.ambient_dim
    cons = list(P.constraints)
    if box:
        cons += box_rows(n)
    eq_idx = [k for k, c in enumerate(cons) if c.tag is Tag.MIN_TRANSVERSAL]
    others = [k for k in range(len(cons)) if k not in eq_idx]
    # the equalities can be dependent, so only their rank counts towards n
    eq_rank = rank([[Fraction(v) for v in cons[k].row(n)] for k in eq_idx]) if eq_idx else 0
    found = set()
    for combo in itertools.combinations(others, max(0, n - eq_rank)):
        idx = eq_idx + list(combo)
        rows = [[Fraction(v) for v in cons[k].row(n)] for k in idx]
        if rank(rows) != n:
            continue
        x = solve(rows, [cons[k].rhs for k in idx])
        if x is not None and all(c.satisfied(x) for c in cons):
            found.add(tuple(x))
    return sorted(found)


# --- derived quantities ------------------------------------------------------------


def is_integral_point(p) -> bool:
    return all(v.denominator == 1 for v in p)


def is_integral_polytope(P: HPolyhedron, V: VertexSet | None = None):
    """``(True, None)`` if every vertex is integral, else ``(False, vertex)``."""
    V = V if V is not None else vertices(P)
    for p in V.points:
        if not is_integral_point(p):
            return False, p
    return True, None


def affine_dimension(points) -> int:
    points = list(points)
    if not points:
        raise EmptyInput("affine dimension of an empty point set")
    return affine_rank([[Fraction(v) for v in p] for p in points])


def is_simplex(P: HPolyhedron, V: VertexSet | None = None) -> bool:
    V = V if V is not None else vertices(P)
    if not V.points:
        return False
    return len(V.points) == affine_dimension(V.points) + 1


@dataclass(frozen=True)
class Facet:
    vertices: frozenset  # indices into the vertex list
    transversals: tuple[int, ...]  # masks of transversal rows defining the facet
    nonneg: tuple[int, ...]  # element ids whose x_a >= 0 defines it

    def to_dict(self, labels=()) -> dict:
        def lab(m):
            return [labels[i] if labels else str(i) for i in core.ids_of(m)]
        return {
            "vertices": sorted(self.vertices),
            "transversals": [lab(m) for m in self.transversals],
            "nonneg": [labels[i] if labels else str(i) for i in self.nonneg],
        }


def facets(P: HPolyhedron, V: VertexSet | None = None) -> list[Facet]:
    """Facets of a polytope identified by their vertex sets.

    Each facet lists every inequality row of ``P`` that cuts it out; several
    rows may define the same facet when ``P`` is not full-dimensional.
    """
    V = V if V is not None else vertices(P)
    if not V.points:
        return []
    dim = affine_dimension(V.points)
    if dim == 0:
        return []
    cons = P.constraints
    groups: dict[frozenset, list[int]] = {}
    for k, c in enumerate(cons):
        if c.tag is Tag.MIN_TRANSVERSAL:
            continue
        tight = frozenset(i for i, inc in enumerate(V.incidence) if k in inc)
        if len(tight) == len(V.points):
            continue
        groups.setdefault(tight, []).append(k)
    out = []
    for verts, ks in groups.items():
        if not verts:
            continue
        if affine_dimension([V.points[i] for i in verts]) != dim - 1:
            continue
        trans = tuple(sorted((cons[k].mask for k in ks if cons[k].tag is Tag.TRANSVERSAL),
                             key=core.edge_key))
        nn = tuple(sorted(core.ids_of(cons[k].mask)[0] for k in ks if cons[k].tag is Tag.NONNEG))
        out.append(Facet(verts, trans, nn))
    out.sort(key=lambda f: (sorted(f.vertices), f.transversals, f.nonneg))
    return out


def facets_of_IC(C: Clutter) -> list[Facet]:
    return facets(build_IC(C))


def is_ideal(C: Clutter):
    """``(True, None)`` if the blocking polyhedron of ``C`` is integral.

    Vertices of the blocking polyhedron lie in ``[0,1]^E``, so the polyhedron
    is cut by ``x <= 1``; a point of the boxed polytope is kept only when its
    tight original rows have full rank.  Returns ``(False, vertex)`` otherwise.
    """
    core._require_nondegenerate(C)
    P = blocking_polyhedron(C)
    V = vertices(P, box=True)
    n = C.n
    cons = P.constraints
    for p, tight in zip(V.points, V.incidence):
        if rank([cons[k].row(n) for k in tight]) != n:
            continue
        if not is_integral_point(p):
            return False, p
    return True, None


def original_vertices(P: HPolyhedron, V: VertexSet) -> list[tuple[Fraction, ...]]:
    """Points of a boxed enumeration that are vertices of ``P`` itself."""
    n = P.ambient_dim
    cons = P.constraints
    return [p for p, t in zip(V.points, V.incidence)
            if rank([cons[k].row(n) for k in t]) == n]


def integral_points(P: HPolyhedron, upper: int = 1) -> list[tuple[int, ...]]:
    """Brute-force lattice points of ``P`` inside ``[0, upper]^n``."""
    n = P.ambient_dim
    out = []
    for x in itertools.product(range(upper + 1), repeat=n):
        if P.contains([Fraction(v) for v in x]):
            out.append(x)
    return out
