from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from clutterkit import exact_lp
from clutterkit.core import make_clutter
from clutterkit.errors import DegenerateClutter, Infeasible, Unbounded
from clutterkit.exact_lp import EQ, GE, LE, solve_lp
from clutterkit.generators import affine_plane, fano, q6

import oracles

F = Fraction


def test_textbook_lp():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), 36
    sol = solve_lp([[1, 0], [0, 2], [3, 2]], [4, 12, 18], [3, 5])
    assert sol.value == 36
    assert sol.primal == (2, 6)
    assert sol.dual == (0, F(3, 2), 1)


def test_mixed_senses_against_highs():
    A = [[1, 1, 1], [2, -1, 0], [0, 1, 3]]
    b = [10, 2, 6]
    c = [1, 2, 1]
    senses = [LE, GE, EQ]
    sol = solve_lp(A, b, c, senses)
    res = linprog(-np.array(c), A_ub=[A[0], [-v for v in A[1]]], b_ub=[b[0], -b[1]],
                  A_eq=[A[2]], b_eq=[b[2]], bounds=(0, None), method="highs")
    assert res.status == 0
    assert float(sol.value) == pytest.approx(-res.fun)


def test_negative_rhs_is_normalised():
    # x >= 1 written as -x <= -1 ; max -x  -> x = 1
    sol = solve_lp([[-1]], [-1], [-1])
    assert sol.primal == (1,)
    assert sol.value == -1


def test_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        solve_lp([[1], [1]], [1, 2], [1], [LE, GE])
    with pytest.raises(Unbounded):
        solve_lp([[1, -1]], [1], [0, 1])


def test_degenerate_redundant_equalities():
    sol = solve_lp([[1, 1], [2, 2]], [1, 2], [1, 0], [EQ, EQ])
    assert sol.value == 1


def test_fpn_q6_and_fano():
    assert exact_lp.fpn(q6()) == 2
    assert exact_lp.fpn(fano()) == F(7, 3)


def test_fpn_matches_highs_on_affine_plane():
    C = affine_plane(3)
    assert exact_lp.fpn(C) == 3
    assert float(exact_lp.fpn(C)) == pytest.approx(oracles.fpn(C.edges, C.n))


def test_cover_is_dual_of_packing():
    C = fano()
    x = exact_lp.min_fractional_cover(C)
    assert sum(x) == exact_lp.fpn(C)
    assert all(sum(x[a] for a in range(C.n) if h >> a & 1) >= 1 for h in C.edges)


def test_packing_load_within_capacity():
    p = exact_lp.max_fractional_packing(fano())
    assert all(v <= 1 for v in p.load())
    assert p.value == sum(p.weights.values())


def test_q6_unique_half_packing():
    Q = q6()
    p = exact_lp.max_fractional_packing(Q)
    assert set(p.weights.values()) == {F(1, 2)}
    assert exact_lp.is_unique_max_packing(Q)
    for h in Q.edges:
        assert exact_lp.edge_weight_range(Q, h) == (F(1, 2), F(1, 2))


def test_non_unique_packing():
    # a star: either edge alone is a maximum packing
    C = make_clutter("abc", ["ab", "ac"])
    assert exact_lp.fpn(C) == 1
    assert not exact_lp.is_unique_max_packing(C)
    assert exact_lp.edge_weight_range(C, "ab") == (0, 1)


def test_edge_weight_range_requires_edge():
    with pytest.raises(ValueError):
        exact_lp.edge_weight_range(q6(), "12")


def test_fpn_rejects_degenerate():
    from clutterkit.core import Clutter

    with pytest.raises(DegenerateClutter):
        exact_lp.fpn(Clutter(("a",), ()))


def test_solution_to_dict_strings():
    d = exact_lp.solution_to_dict(solve_lp([[1]], [F(1, 3)], [1]))
    assert d["value"] == "1/3"
