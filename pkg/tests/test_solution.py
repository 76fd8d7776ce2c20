import itertools

import pytest

from clutterkit import core, solution
from clutterkit.core import Clutter, make_clutter
from clutterkit.errors import AxiomViolation, ClutterError, NotApplicable
from clutterkit.generators import affine_plane, fano, q6
from clutterkit.solution import SearchLimits, Status

import oracles


def plus(C, *extra):
    return Clutter.from_masks(C.ground, C.edges + tuple(C.mask(h) for h in extra))


def test_align_rejects_other_ground():
    with pytest.raises(ClutterError):
        solution.align(q6(), make_clutter("abc", ["a"]))


def test_align_reorders_ground():
    Q = q6()
    D = make_clutter("654321", ["135", "146", "236", "245"])
    assert solution.align(Q, D) == Q


# Condition IM


def test_im_identity():
    assert solution.condition_IM(q6(), q6())


def test_im_q6_with_extra_edge_matches_rank_oracle():
    Q = q6()
    for h in ["123", "1234", "3456", "1256"]:
        D = plus(Q, h)
        expected = oracles.same_affine_hull(
            [Q.vector(b) for b in core.min_transversals(Q)],
            [Q.vector(b) for b in core.min_transversals(D)])
        assert solution.condition_IM(Q, D) == expected


def test_im_fails_when_a_minimum_transversal_is_lost():
    C = affine_plane(3)
    minb = core.min_transversals(C)
    lost = minb[0]
    rest = C.full & ~lost
    for h in itertools.combinations(core.ids_of(rest), 2):
        hm = core.mask_of(h)
        if any(e & hm == hm for e in C.edges):
            continue
        D = Clutter.from_masks(C.ground, C.edges + (hm,))
        if core.blocking_number(D) != 3:
            continue
        assert lost not in core.min_transversals(D)
        assert not solution.condition_IM(C, D)
        assert not oracles.same_affine_hull(
            [C.vector(b) for b in minb], [C.vector(b) for b in core.min_transversals(D)])
        return
    pytest.fail("no suitable extra edge found")


# Condition IF


def test_if_identity():
    assert solution.condition_IF(q6(), q6()) == (True, None)
    assert solution.condition_IF(affine_plane(3), affine_plane(3)) == (True, None)


def test_if_second_clause_violated():
    Q = q6()
    D = make_clutter(Q.ground, ["12", "34", "56"])
    ok, w = solution.condition_IF(Q, D)
    assert not ok and w["clause"] == "intersection"


def test_if_facet_clause_with_superset():
    # every edge of C is still a transversal of D when the added edge meets them all
    C = affine_plane(3)
    pool, _, _ = solution.candidate_pool(C, SearchLimits(max_edge_size=6))
    D = Clutter.from_masks(C.ground, C.edges + (pool[0],))
    ok, w = solution.condition_IF(C, D)
    assert ok, w


# Condition H


def test_h_identity_and_q6_example():
    Q = q6()
    assert solution.condition_H(Q, Q) == (True, None)
    assert solution.condition_H(Q, plus(Q, "123")) == (True, None)


def test_h_fails_without_containment():
    Q = q6()
    D = make_clutter(Q.ground, ["135", "146", "236"])
    ok, w = solution.condition_H(Q, D)
    assert not ok and w["clause"] == "containment"


def test_h_rejects_xyz_in_affine_plane():
    C = affine_plane(3)
    r = solution.affine_obstruction(C)
    D = plus(C, [r.x, r.y, r.z])
    ok, w = solution.condition_H(C, D)
    assert not ok and w["clause"] == "double-hit"


# Condition B


def test_b_q6_self():
    assert solution.condition_B(q6(), q6()) == (True, None)


def test_b_trivial_ground():
    C = make_clutter("a", ["a"])
    assert solution.condition_B(C, C) == (True, None)


def test_b_affine_plane_self_fails_with_witness():
    ok, w = solution.condition_B(affine_plane(3), affine_plane(3))
    assert not ok
    assert w["bn_C"] > w["pn_D"]


def test_b_agrees_with_brute_force_minor_sweep():
    Q = q6()
    D = plus(Q, "1234")
    expected = True
    for a, b in core.minor_pairs(Q.n):
        mc = oracles.delete(oracles.contract(Q.edges, a), b)
        md = oracles.delete(oracles.contract(D.edges, a), b)
        if not mc:
            continue
        if 0 in mc:
            bnc = float("inf")
        else:
            bnc = oracles.bn(mc, Q.n)
        pnd = float("inf") if 0 in md else oracles.pn(md)
        if bnc > pnd:
            expected = False
            break
    assert solution.condition_B(Q, D)[0] == expected


# check_solution


def test_check_solution_q6_all_pass():
    r = solution.check_solution(q6(), q6())
    assert r.all_pass()
    assert r.implications_hold()
    assert r.to_dict()["if"] is True


def test_check_solution_affine_plane_self():
    r = solution.check_solution(affine_plane(3), affine_plane(3))
    assert r.tilde_matches and r.c_precore
    assert r.im and r.if_ and r.h
    assert not r.mnp and not r.b
    # the blocking polyhedron of AG(2,3) has a half-integral vertex
    assert not r.ideal and "ideal" in r.witnesses
    assert r.implications_hold()


def test_check_solution_missing_edge():
    Q = q6()
    r = solution.check_solution(Q, make_clutter(Q.ground, ["135", "146", "236"]))
    assert not r.h
    assert r.implications_hold()


def test_check_solution_warns_for_non_precore():
    C = make_clutter("abcd", ["ab", "cd"])
    r = solution.check_solution(C, C)
    assert not r.c_precore and "warning" in r.witnesses


def test_implications_on_q6_supersets():
    Q = q6()
    for h in ["123", "1234", "3456", "124", "356"]:
        D = plus(Q, h)
        assert solution.check_solution(Q, D).implications_hold()


# search


def test_search_q6_root_found():
    out = solution.search_solutions(q6(), SearchLimits(max_extra_edges=0))
    assert out.status is Status.FOUND
    assert out.found == q6()
    assert out.nodes_explored == 1
    assert solution.check_solution(q6(), out.found).all_pass()


def test_search_node_cap_zero():
    out = solution.search_solutions(q6(), SearchLimits(node_cap=0))
    assert out.status is Status.LIMIT_REACHED
    assert out.nodes_explored == 0


def test_search_time_cap():
    out = solution.search_solutions(affine_plane(3), SearchLimits(max_extra_edges=3, time_cap=0.0))
    assert out.status is Status.LIMIT_REACHED


def test_search_affine_plane_never_found():
    out = solution.search_solutions(affine_plane(3), SearchLimits(max_extra_edges=1, max_edge_size=6))
    assert out.status is Status.EXHAUSTED
    assert out.pool_size > 0
    assert out.found is None
    assert out.nodes_explored == 1 + out.pool_size


def test_search_is_deterministic():
    lim = SearchLimits(max_extra_edges=1, max_edge_size=6)
    a = solution.search_solutions(affine_plane(3), lim).to_dict()
    b = solution.search_solutions(affine_plane(3), lim).to_dict()
    assert a == b


def test_candidate_pool_filters():
    C = q6()
    pool, _, _ = solution.candidate_pool(C, SearchLimits())
    minb = core.min_transversals(C)
    for h in pool:
        assert 2 <= h.bit_count() <= C.n - 2 + 1
        assert any((h & b).bit_count() >= 2 for b in minb)
        assert not any(e & h in (e, h) for e in C.edges)


def test_pool_filters_are_sound():
    # an edge left out of the pool must make C ∪ {H} fail tilde, IM, IF or H
    Q = q6()
    pool, fd, _ = solution.candidate_pool(Q, SearchLimits())
    for size in range(2, Q.n - 1):
        for combo in itertools.combinations(range(Q.n), size):
            h = core.mask_of(combo)
            if h in pool or any(e & h in (e, h) for e in Q.edges):
                continue
            D = Clutter.from_masks(Q.ground, Q.edges + (h,))
            passes = (core.tilde(D).edges == Q.edges and solution.condition_IM(Q, D)
                      and solution.condition_IF(Q, D, fd)[0] and solution.condition_H(Q, D)[0])
            assert not passes


def test_pool_filters_are_sound_on_affine_plane():
    C = affine_plane(3)
    pool, fd, _ = solution.candidate_pool(C, SearchLimits(max_edge_size=5))
    assert pool == []
    for size in (2, 3, 4, 5):
        for combo in itertools.combinations(range(C.n), size):
            h = core.mask_of(combo)
            if any(e & h in (e, h) for e in C.edges):
                continue
            D = Clutter.from_masks(C.ground, C.edges + (h,))
            if solution.condition_IM(C, D) and solution.condition_H(C, D)[0]:
                assert not solution.condition_IF(C, D, fd)[0]


def test_search_finds_planted_solutions():
    # every superset D of Q6 that passes all gates must be found when it is in reach
    Q = q6()
    pool, _, _ = solution.candidate_pool(Q, SearchLimits())
    for h in pool:
        D = Clutter.from_masks(Q.ground, Q.edges + (h,))
        if solution.check_solution(Q, D).all_pass():
            out = solution.search_solutions(Q, SearchLimits(max_extra_edges=1))
            assert out.status is Status.FOUND


# affine obstruction


def test_obstruction_affine_plane_3():
    r = solution.affine_obstruction(affine_plane(3))
    assert r.obstruction_verified, r.failures
    assert r.bn_restriction == 2
    assert len(r.components) == 3 and all(c["star"] for c in r.components)
    assert len(r.candidates) == 4
    assert all(c["killed_by"] for c in r.candidates)
    assert all(c is not None for c in r.pair_certificates)
    assert r.xyz_meets_each_minb_at_most_once
    d = r.to_dict()
    assert d["obstruction_verified"] is True


def test_obstruction_all_triples():
    reports = solution.affine_obstruction(affine_plane(3), all_triples=True)
    assert len(reports) == len(list(solution.valid_triples(affine_plane(3))))
    assert all(r.obstruction_verified for r in reports)


def test_obstruction_affine_plane_5():
    r = solution.affine_obstruction(affine_plane(5))
    assert r.obstruction_verified, r.failures
    assert len(r.candidates) == 4


def test_obstruction_preconditions():
    with pytest.raises(NotApplicable):
        solution.affine_obstruction(q6())
    with pytest.raises(AxiomViolation):
        solution.affine_obstruction(fano())


def test_xyz_hits_match_direct_count():
    C = affine_plane(3)
    r = solution.affine_obstruction(C)
    xyz = C.mask([r.x, r.y, r.z])
    assert r.xyz_minb_hits == [(xyz & b).bit_count() for b in core.min_transversals(C)]
