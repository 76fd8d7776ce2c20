"""Exact simplex method and the fractional packing LP of a clutter.

The packing LP maximises ``sum y(H)`` subject to ``sum_{H ∋ a} y(H) <= 1``
for every element ``a`` and ``y >= 0``; its dual is the fractional covering
LP ``min sum x(a)`` with ``x(H) >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import core
from .core import Clutter
from .errors import Infeasible, Unbounded
from .linalg import affine_rank

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LPSolution:
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    value: Fraction
    optimal_basis: tuple[int, ...]


def solve_lp(A, b, c, senses=None) -> LPSolution:
    """Maximise ``c @ x`` subject to ``A[i] @ x  senses[i]  b[i]`` and ``x >= 0``.

    Two-phase tableau simplex over ``Fraction`` with Bland's rule.  The dual
    vector follows the usual sign conventions of the max problem (``>= 0`` for
    ``<=`` rows, ``<= 0`` for ``>=`` rows, free for equalities) and strong
    duality is checked exactly before returning.
    """
    m = len(A)
    n = len(c)
    senses = list(senses) if senses is not None else [LE] * m
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]

    # normalise to b >= 0
    flip = [False] * m
    for i in range(m):
        if b[i] < 0:
            flip[i] = True
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
            senses[i] = {LE: GE, GE: LE, EQ: EQ}[senses[i]]

    # columns: x (n) | slack/surplus (one per inequality) | artificial (GE/EQ rows)
    n_slack = sum(1 for s in senses if s != EQ)
    art_rows = [i for i in range(m) if senses[i] != LE]
    ncol = n + n_slack + len(art_rows)
    T = [row + [Fraction(0)] * (ncol - n) + [b[i]] for i, row in enumerate(A)]
    basis = [0] * m
    unit_col = [0] * m  # column that starts as e_i; used to read off the dual
    k = n
    for i in range(m):
        if senses[i] != EQ:
            T[i][k] = Fraction(1) if senses[i] == LE else Fraction(-1)
            if senses[i] == LE:
                basis[i] = k
                unit_col[i] = k
            k += 1
    artificial = set()
    for i in art_rows:
        T[i][k] = Fraction(1)
        basis[i] = k
        unit_col[i] = k
        artificial.add(k)
        k += 1

    def pivot(r: int, col: int) -> None:
        pv = T[r][col]
        if pv != 1:
            T[r] = [v / pv for v in T[r]]
        row_r = T[r]
        for i in range(m):
            if i != r:
                f = T[i][col]
                if f != 0:
                    T[i] = [a - f * bb for a, bb in zip(T[i], row_r)]
        basis[r] = col

    def run(cost, allowed) -> None:
        while True:
            # reduced cost d_j = cost_j - c_B B^-1 a_j ; entering needs d_j > 0
            entering = None
            for j in allowed:
                if j in basis:
                    continue
                d = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
                if d > 0:
                    entering = j
                    break
            if entering is None:
                return
            best = None
            for i in range(m):
                a = T[i][entering]
                if a > 0:
                    ratio = T[i][-1] / a
                    key = (ratio, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded("objective is unbounded")
            pivot(best[1], entering)

    all_cols = list(range(ncol))
    if artificial:
        phase1 = [Fraction(0)] * ncol
        for j in artificial:
            phase1[j] = Fraction(-1)
        run(phase1, all_cols)
        if any(T[i][-1] != 0 for i in range(m) if basis[i] in artificial):
            raise Infeasible("constraints are infeasible")
        # drive zero-level artificials out where possible; stuck rows are redundant
        for i in range(m):
            if basis[i] in artificial:
                j = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
                if j is not None:
                    pivot(i, j)
    cost = [Fraction(0)] * ncol
    cost[:n] = c
    run(cost, [j for j in all_cols if j not in artificial])

    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    y = [sum(cost[basis[r]] * T[r][unit_col[i]] for r in range(m)) for i in range(m)]
    for i in range(m):
        if flip[i]:
            y[i] = -y[i]
    value = sum(ci * xi for ci, xi in zip(c, x))
    sol = LPSolution(tuple(x), tuple(y), value, tuple(sorted(basis)))
    _certify(sol, A, b, c, senses, flip)
    return sol


def _certify(sol: LPSolution, A, b, c, senses, flip) -> None:
    """Exact primal/dual feasibility and strong duality; a failure is a bug."""
    x, y = sol.primal, sol.dual
    m = len(A)
    for i in range(m):
        # A, b, senses are the normalised (possibly flipped) rows
        yi = -y[i] if flip[i] else y[i]
        lhs = sum(a * v for a, v in zip(A[i], x))
        s = senses[i]
        assert (lhs <= b[i]) if s == LE else (lhs >= b[i]) if s == GE else lhs == b[i]
        assert (yi >= 0) if s == LE else (yi <= 0) if s == GE else True
    assert all(v >= 0 for v in x)
    for j in range(len(c)):
        col = sum((-y[i] if flip[i] else y[i]) * A[i][j] for i in range(m))
        assert col >= c[j], "dual infeasible"
    dual_value = sum((-y[i] if flip[i] else y[i]) * b[i] for i in range(m))
    assert dual_value == sol.value, "strong duality violated"


# --- fractional packings ---------------------------------------------------------


@dataclass(frozen=True)
class FractionalPacking:
    clutter: Clutter
    weights: dict = field(hash=False)
    value: Fraction

    def support(self) -> list[int]:
        return [h for h in self.clutter.edges if self.weights[h] > 0]

    def load(self) -> list[Fraction]:
        """Per-element load ``sum_{H ∋ a} y(H)``."""
        C = self.clutter
        return [
            sum((self.weights[h] for h in C.edges if h >> a & 1), Fraction(0))
            for a in range(C.n)
        ]

    def to_dict(self) -> dict:
        C = self.clutter
        return {
            "value": str(self.value),
            "weights": [
                {"edge": list(C.labels(h)), "y": str(self.weights[h])} for h in C.edges
            ],
        }


def _packing_rows(C: Clutter):
    return [[1 if h >> a & 1 else 0 for h in C.edges] for a in range(C.n)]


def _check_clutter(C: Clutter) -> None:
    core._require_nondegenerate(C)


def max_fractional_packing(C: Clutter) -> FractionalPacking:
    _check_clutter(C)
    sol = solve_lp(_packing_rows(C), [1] * C.n, [1] * len(C.edges))
    weights = dict(zip(C.edges, sol.primal))
    return FractionalPacking(C, weights, sol.value)


def fpn(C: Clutter) -> Fraction:
    return max_fractional_packing(C).value


def min_fractional_cover(C: Clutter) -> tuple[Fraction, ...]:
    """An optimal dual solution ``x`` (per element) of the packing LP."""
    _check_clutter(C)
    return solve_lp(_packing_rows(C), [1] * C.n, [1] * len(C.edges)).dual


def _face_extreme(C: Clutter, value: Fraction, j: int, sign: int) -> Fraction:
    rows = _packing_rows(C) + [[1] * len(C.edges)]
    rhs = [1] * C.n + [value]
    senses = [LE] * C.n + [EQ]
    obj = [0] * len(C.edges)
    obj[j] = sign
    return sign * solve_lp(rows, rhs, obj, senses).value


def edge_weight_range(C: Clutter, H) -> tuple[Fraction, Fraction]:
    """``(min, max)`` of ``y(H)`` over all maximum fractional packings."""
    _check_clutter(C)
    h = C.mask(H)
    if h not in C.edges:
        raise ValueError(f"{C.labels(h)} is not an edge")
    j = C.edges.index(h)
    value = fpn(C)
    return _face_extreme(C, value, j, -1), _face_extreme(C, value, j, 1)


def edge_in_some_max_packing(C: Clutter, H) -> bool:
    return edge_weight_range(C, H)[1] > 0


def is_unique_max_packing(C: Clutter) -> bool:
    """True iff the optimal face of the packing LP is a single point.

    When the clutter meets the tilde-full condition the answer is
    cross-checked against affine independence of the tilde incidence
    vectors; a disagreement raises ``AssertionError``.
    """
    _check_clutter(C)
    value = fpn(C)
    unique = True
    supported = []
    for j, h in enumerate(C.edges):
        lo = _face_extreme(C, value, j, -1)
        hi = _face_extreme(C, value, j, 1)
        supported.append(hi > 0)
        if lo != hi:
            unique = False
    tl = core.tilde_masks(C.edges)
    mtc = core.is_minimum_transversal_covered(C)
    if mtc and value == core.bn_masks(C.edges) and all(
        supported[C.edges.index(h)] for h in tl
    ):
        independent = affine_rank([C.vector(h) for h in tl]) == len(tl) - 1
        assert independent == unique, "uniqueness disagrees with affine independence"
    return unique


def solution_to_dict(sol: LPSolution) -> dict:
    return {
        "value": str(sol.value),
        "primal": [str(v) for v in sol.primal],
        "dual": [str(v) for v in sol.dual],
        "optimal_basis": list(sol.optimal_basis),
    }
