"""Randomised properties over small clutters (ground sets of at most six elements).

Each property runs on at least 200 generated clutters and on the generator
outputs.  Arithmetic is exact, so every comparison is an equality.
"""

import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from clutterkit import conditions, core, exact_lp, polytope
from clutterkit.core import Clutter
from clutterkit.generators import (
    Graph,
    affine_plane,
    complete_graph,
    fano,
    is_brick,
    q6,
    vertex_cut_clutter,
)

import oracles

N_EXAMPLES = 250
PROPS = settings(max_examples=N_EXAMPLES, deadline=None, derandomize=True,
                 suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@st.composite
def clutters(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    family = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=8))
    return Clutter(tuple("abcdef"[:n]), core.minimal_masks(family))


def mtc_ibc(C):
    return core.is_minimum_transversal_covered(C) and conditions.integral_blocking(C)


# about a quarter of random clutters pass; filtering keeps every property at N_EXAMPLES
mtc_ibc_clutters = clutters().filter(mtc_ibc)


GENERATED = [q6(), fano(), affine_plane(2), vertex_cut_clutter(complete_graph(4))]
GENERATED_LARGE = [affine_plane(3)]


# blocker identities


def check_blocker(C):
    b = core.blocker_masks(C.edges)
    assert core.blocker_masks(b) == C.edges
    assert sorted(b) == oracles.blocker(C.edges, C.n)


def check_minor_duality(C):
    b = core.blocker_masks(C.edges)
    for a in range(C.n):
        m = 1 << a
        assert core.blocker_masks(core.minor_masks(C.edges, 0, m)) == core.minor_masks(b, m, 0)
        assert core.blocker_masks(core.minor_masks(C.edges, m, 0)) == core.minor_masks(b, 0, m)


@PROPS
@given(clutters())
def test_blocker_involution_and_oracle(C):
    check_blocker(C)


@PROPS
@given(clutters())
def test_delete_contract_duality(C):
    check_minor_duality(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_blocker_identities_on_generators(C):
    assert core.blocker_masks(core.blocker_masks(C.edges)) == C.edges
    check_minor_duality(C)


# packing numbers


def check_numbers(C):
    pn = core.packing_number(C)
    bn = core.blocking_number(C)
    f = exact_lp.fpn(C)
    assert pn <= f <= bn
    assert pn == oracles.pn(C.edges)
    assert bn == oracles.bn(C.edges, C.n)
    assert float(f) == pytest.approx(oracles.fpn(C.edges, C.n), abs=1e-9)


@PROPS
@given(clutters())
def test_pn_fpn_bn_chain(C):
    check_numbers(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_pn_fpn_bn_chain_on_generators(C):
    check_numbers(C)


def check_ideal(C):
    ok, frac = polytope.is_ideal(C)
    assert ok == oracles.ideal(C.edges, C.n)
    if ok:
        assert exact_lp.fpn(C) == core.blocking_number(C)
    else:
        assert not polytope.is_integral_point(frac)


@PROPS
@given(clutters())
def test_ideal_implies_ibc(C):
    check_ideal(C)


@pytest.mark.parametrize("C", GENERATED, ids=str)
def test_ideal_implies_ibc_on_generators(C):
    check_ideal(C)


# packing identities under mtc + IBC


def check_packing_identities(C):
    if not mtc_ibc(C):
        return
    bn = core.blocking_number(C)
    p = exact_lp.max_fractional_packing(C)
    tl = core.tilde_masks(C.edges)
    # full load on every element
    assert p.load() == [1] * C.n
    # support lies in tilde
    assert all(h in tl for h in p.support())
    # restricted to tilde the packing still covers E exactly and has value bn
    assert sum(p.weights[h] for h in tl) == bn
    for a in range(C.n):
        assert sum(p.weights[h] for h in tl if h >> a & 1) == 1
    # the tilde clutter has the same blocking number and fpn
    T = Clutter(C.ground, tl)
    assert core.blocking_number(T) == bn
    assert exact_lp.fpn(T) == bn
    assert len(tl) >= bn


@PROPS
@given(mtc_ibc_clutters)
def test_slack_ibc_mfp_identities(C):
    check_packing_identities(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_packing_identities_on_generators(C):
    check_packing_identities(C)


# the polytope I(C)


def check_implication_chain(C):
    if not mtc_ibc(C):
        return
    P = polytope.build_IC(C)
    V = polytope.vertices(P)
    integral = bool(V.points) and polytope.is_integral_polytope(P, V)[0]
    tf = conditions.tilde_full(C)[0]
    if integral:
        assert tf
    if tf:
        assert conditions.is_weak_tilde_invariant(C)


@PROPS
@given(mtc_ibc_clutters)
def test_integral_ic_tilde_full_weak_invariant(C):
    check_implication_chain(C)


def check_integral_points(C):
    if not mtc_ibc(C):
        return
    P = polytope.build_IC(C)
    pts = set(polytope.integral_points(P))
    assert pts == {C.vector(h) for h in core.tilde_masks(C.edges)}


@PROPS
@given(mtc_ibc_clutters)
def test_integral_points_are_tilde(C):
    check_integral_points(C)


@pytest.mark.parametrize("C", GENERATED, ids=str)
def test_integral_points_on_generators(C):
    check_integral_points(C)


def check_center(C):
    if not mtc_ibc(C):
        return
    bn = core.blocking_number(C)
    P = polytope.build_IC(C)
    x = [Fraction(1, bn)] * C.n
    assert P.contains(x)
    assert all(c.tight(x) for c in P.equalities)
    # strictly inside every inequality row of I(C)
    assert all(c.value(x) > c.rhs for c in P.inequalities)


@PROPS
@given(mtc_ibc_clutters)
def test_center_point(C):
    check_center(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_center_point_on_generators(C):
    check_center(C)


def check_unique_and_simplex(C):
    if not mtc_ibc(C):
        return
    unique = exact_lp.is_unique_max_packing(C)
    if conditions.tilde_full(C)[0]:
        assert conditions.affinely_independent(C, core.tilde_masks(C.edges)) == unique
    P = polytope.build_IC(C)
    V = polytope.vertices(P)
    if V.points and polytope.is_integral_polytope(P, V)[0]:
        assert polytope.is_simplex(P, V) == unique


@PROPS
@given(mtc_ibc_clutters)
def test_unique_packing_equivalences(C):
    check_unique_and_simplex(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_unique_packing_equivalences_on_precore_examples(C):
    if conditions.is_precore(C).is_precore:
        assert exact_lp.is_unique_max_packing(C)
        P = polytope.build_IC(C)
        assert polytope.is_simplex(P)
        assert conditions.affinely_independent(C, core.tilde_masks(C.edges))
    check_unique_and_simplex(C)


def check_vertices(C):
    if not core.is_minimum_transversal_covered(C):
        return
    P = polytope.build_IC(C)
    V = polytope.vertices(P)
    assert polytope.vertex_certificates_ok(P, V)
    # basis enumeration is exponential in the row count; keep it to small grounds
    if C.n <= 8:
        assert list(V.points) == polytope.vertices_by_basis_enumeration(P)


@PROPS
@given(clutters())
def test_vertex_certificates_and_basis_enumeration(C):
    check_vertices(C)


@pytest.mark.parametrize("C", GENERATED + GENERATED_LARGE, ids=str)
def test_vertex_certificates_on_generators(C):
    check_vertices(C)


# minimally non-packing clutters are non-separable


@PROPS
@given(clutters())
def test_mnp_implies_nonseparable(C):
    if core.is_minimally_non_packing(C)[0]:
        assert not conditions.is_separable(C)[0]


@PROPS
@given(clutters())
def test_hyperedge_separable_implies_separable(C):
    # the partition {H, E - H} is only nontrivial when H is not all of E
    if mtc_ibc(C):
        flag, h = conditions.is_hyperedge_separable(C)
        if flag and C.mask(h) != C.full:
            assert conditions.is_separable(C)[0]


# bricks against networkx


@st.composite
def graphs(draw):
    n = draw(st.integers(4, 8))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    return Graph.from_edges(chosen, [str(i) for i in range(n)])


def nx_brick(G):
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(tuple(e) for e in G.edges)
    if len(g) % 2 or nx.node_connectivity(g) < 3:
        return False
    for u, v in itertools.combinations(g.nodes, 2):
        h = g.copy()
        h.remove_nodes_from([u, v])
        if 2 * len(nx.max_weight_matching(h, maxcardinality=True)) != len(h):
            return False
    return True


@PROPS
@given(graphs())
def test_brick_matches_networkx(G):
    assert is_brick(G) == nx_brick(G)
