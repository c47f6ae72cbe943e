from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qpmckay.errors import AsymmetricQuiver, DimensionMismatch, EmptyChamber, LoopAtVertex
from qpmckay.grouprep import GroupSpec
from qpmckay.mckay import mckay_qp
from qpmckay.mutclass import enumerate_class, expected_class_size
from qpmckay.qp import Arrow, Quiver, Vertex
from qpmckay.resolutions import (
    all_resolutions,
    cover_skeletons,
    resolution_of_word,
    skeleton_chamber,
    stated_chamber,
    theta_order,
)
from qpmckay.skeletons import cyclic3_charts, dihedral_even_chart, tetrahedral_chart
from qpmckay.stability import (
    SkeletonRep,
    bilinear_form,
    chamber_from_cover,
    cone_equal,
    cones_adjacent,
    make_cone,
    pairing,
    reflect_dim,
    reflect_theta,
    reflection_cone,
    skeleton_subreps,
    verify_skeleton_relations,
)

D = lambda n: GroupSpec("D", n)  # noqa: E731
T = GroupSpec("T", 0)
CHAMBER_SPECS = [D(5), D(7), D(9), D(4), D(6), D(8), T]


def e(v):
    return {v: 1}


# ---------------------------------------------------------------------------
# bilinear form and reflections


def test_form_tetrahedral_examples():
    q = mckay_qp(T).quiver
    assert bilinear_form(q, e("0"), e("3")) == -1
    for v in q.vertex_ids():
        assert bilinear_form(q, e(v), e(v)) == 2


def test_form_symmetric():
    q = mckay_qp(D(7)).quiver
    ids = q.vertex_ids()
    for i, j in combinations(ids, 2):
        assert bilinear_form(q, e(i), e(j)) == bilinear_form(q, e(j), e(i))


def test_form_rejects_asymmetric_quiver():
    q = Quiver((Vertex("0", "0", 1), Vertex("1", "1", 1)), (Arrow("a", "a", "0", "1"),))
    with pytest.raises(AsymmetricQuiver):
        bilinear_form(q, e("0"), e("1"))


def test_reflect_dim_example():
    # D10 quiver 0, 0', 1, 2 with d = (1, 1, 2, 2): (d, e_0') = 2 - 1 - 2 = -1
    q = mckay_qp(D(5)).quiver
    d = q.dims()
    assert bilinear_form(q, d, e("0'")) == -1
    assert reflect_dim(q, "0'", d) == {"0": 1, "0'": 2, "1": 2, "2": 2}


def test_reflect_loop_vertex_rejected():
    q = mckay_qp(D(5)).quiver
    looped = [v for v in q.vertex_ids() if q.loops_at(v)]
    assert looped
    with pytest.raises(LoopAtVertex):
        reflect_dim(q, looped[0], q.dims())
    with pytest.raises(LoopAtVertex):
        reflect_theta(q, looped[0], {v: 1 for v in q.vertex_ids()})


@pytest.mark.parametrize("spec", CHAMBER_SPECS, ids=str)
def test_reflect_dim_involution(spec):
    q = mckay_qp(spec).quiver
    d = q.dims()
    for i in q.vertex_ids():
        if not q.loops_at(i):
            assert reflect_dim(q, i, reflect_dim(q, i, d)) == d


def _duality_case(spec):
    q = mckay_qp(spec).quiver
    ids = q.vertex_ids()
    free = [v for v in ids if not q.loops_at(v)]
    ints = st.integers(-6, 6)

    @settings(max_examples=200)
    @given(
        i=st.sampled_from(free),
        alpha=st.fixed_dictionaries({v: ints for v in ids}),
        theta=st.fixed_dictionaries({v: ints for v in ids}),
    )
    def check(i, alpha, theta):
        # (s_i theta)(s_i alpha) = theta(alpha), and s_i preserves the form
        assert pairing(reflect_theta(q, i, theta), reflect_dim(q, i, alpha)) == pairing(theta, alpha)
        s = reflect_dim(q, i, alpha)
        assert bilinear_form(q, s, s) == bilinear_form(q, alpha, alpha)

    check()


@pytest.mark.parametrize("spec", CHAMBER_SPECS, ids=str)
def test_reflection_duality(spec):
    _duality_case(spec)


# ---------------------------------------------------------------------------
# skeleton subrepresentations


def test_cyclic3_u1_subreps():
    u1 = cyclic3_charts()[0]
    got = {tuple(dict(s)[v] for v in ("0", "1", "2")) for s in skeleton_subreps(u1)}
    assert got == {(0, 0, 1), (0, 1, 1)}


def test_subreps_without_links_are_all_proper_subsets():
    q = mckay_qp(GroupSpec("C", 3)).quiver
    sk = SkeletonRep.build("empty", q, {})
    got = {tuple(dict(s)[v] for v in ("0", "1", "2")) for s in skeleton_subreps(sk)}
    assert got == {(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)} - {(0, 0, 0), (1, 1, 1)}


def test_build_checks_matrix_shape():
    q = mckay_qp(GroupSpec("C", 3)).quiver
    with pytest.raises(DimensionMismatch):
        SkeletonRep.build("bad", q, {"a0": [[1, 0]]})


@pytest.mark.parametrize("n", [4, 6, 8])
def test_even_named_vectors_are_subreps(n):
    m = n // 2
    order = theta_order(D(n))
    named = oracles.even_named_vectors(m)
    charts = (
        [("U", i) for i in range(2, m + 2)]
        + [("V'", m + 2), ("V''", m + 3)]
        + [("U'", i) for i in range(1, m + 2)]
        + [("U''", i) for i in range(1, m + 1)]
        + [("V'", i) for i in range(2, m + 2)]
        + [("V''", i) for i in range(3, m + 3)]
    )
    for kind, i in charts:
        subs = {tuple(dict(s)[v] for v in order) for s in skeleton_subreps(dihedral_even_chart(n, kind, i))}
        for key in oracles.even_chart_vectors(m, kind, i):
            assert named[key] in subs, (kind, i, key)


def _all_skeletons():
    out = {}
    for spec in CHAMBER_SPECS:
        for res in all_resolutions(spec, mirrors=True):
            for sk in cover_skeletons(res):
                out[(str(spec), sk.chart, res.mirrored)] = (spec, sk)
    for sk in cyclic3_charts():
        out[("C3", sk.chart, False)] = (GroupSpec("C", 3), sk)
    return out


SKELETONS = _all_skeletons()


@pytest.mark.parametrize("key", sorted(SKELETONS), ids=lambda k: f"{k[0]}-{k[1]}{'-m' if k[2] else ''}")
def test_skeleton_satisfies_relations(key):
    spec, sk = SKELETONS[key]
    assert verify_skeleton_relations(mckay_qp(spec), sk)


def test_skeleton_with_removed_link_fails_relations():
    # U''2 of T: dropping one link breaks a relation
    qp = mckay_qp(T)
    sk = tetrahedral_chart("U''2")
    broken = []
    for k in range(len(sk.maps)):
        cut = SkeletonRep(sk.chart, sk.dims, sk.maps[:k] + sk.maps[k + 1 :])
        broken.append(not verify_skeleton_relations(qp, cut))
    assert any(broken)


def test_relations_reject_wrong_dimensions():
    with pytest.raises(DimensionMismatch):
        verify_skeleton_relations(mckay_qp(T), cyclic3_charts()[0])


# ---------------------------------------------------------------------------
# cones


def test_make_cone_simple():
    ids = ["0", "1", "2"]
    cone = make_cone(ids, {"0": 1, "1": 1, "2": 1}, [e("1"), e("2")])
    assert cone.facets == 2
    assert cone.contains({"0": -2, "1": 1, "2": 1})
    assert not cone.contains({"0": 0, "1": -1, "2": 1})
    redundant = make_cone(ids, {"0": 1, "1": 1, "2": 1}, [e("1"), e("2"), {"1": 1, "2": 1}])
    assert cone_equal(cone, redundant)
    assert redundant.facets == 2


def test_make_cone_empty():
    ids = ["0", "1", "2"]
    d = {"0": 1, "1": 1, "2": 1}
    with pytest.raises(EmptyChamber):
        make_cone(ids, d, [e("1"), {"1": -1}])
    with pytest.raises(EmptyChamber):
        make_cone(ids, d, [{"0": 1, "1": 1, "2": 1}])


def test_interior_point_is_inside():
    for spec in CHAMBER_SPECS:
        for res in all_resolutions(spec, mirrors=True):
            cone = skeleton_chamber(res)
            assert cone.contains(cone.interior_point())


def test_cyclic3_chamber():
    sks = cyclic3_charts()
    cone = chamber_from_cover(sks, sks[0].dim_vector())
    ref = make_cone(["0", "1", "2"], sks[0].dim_vector(), [e("1"), e("2")])
    assert cone_equal(cone, ref)


def test_tetrahedral_ghilb_chamber():
    cone = skeleton_chamber(resolution_of_word(T, ()))
    q = mckay_qp(T).quiver
    assert cone_equal(cone, make_cone(q.vertex_ids(), q.dims(), [e("1"), e("2"), e("3")]))


def test_chamber_from_cover_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        chamber_from_cover([tetrahedral_chart("U0"), cyclic3_charts()[0]], tetrahedral_chart("U0").dim_vector())


def test_d10_x0_chamber():
    # X_0 for n = 5: theta_1 < 0, theta_1 + theta_2 > 0, theta_2 > 0, theta_3 > 0
    spec = D(5)
    q = mckay_qp(spec).quiver
    ref = make_cone(
        q.vertex_ids(), q.dims(), [{"0'": -1}, {"0'": 1, "1": 1}, e("1"), e("2")]
    )
    assert cone_equal(skeleton_chamber(resolution_of_word(spec, ["0'"])), ref)
    assert cone_equal(reflection_cone(mckay_qp(spec), ["0'"]), ref)


def test_d14_word_chamber():
    spec = D(7)
    q = mckay_qp(spec).quiver
    covs = [
        {"0'": -1},
        {"0'": -1, "1": -1},
        {"0'": -1, "1": -1, "2": -1},
        {"0'": 1, "1": 1, "2": 1, "3": 1},
        e("1"),
        e("2"),
        e("3"),
    ]
    ref = make_cone(q.vertex_ids(), q.dims(), covs)
    word = ["0'", "1", "2"]
    assert cone_equal(reflection_cone(mckay_qp(spec), word), ref)
    assert cone_equal(skeleton_chamber(resolution_of_word(spec, word)), ref)


@pytest.mark.parametrize("word", sorted(oracles.TETRA_CHAMBERS), ids=lambda w: "".join(w) or "root")
def test_tetrahedral_chamber_literals(word):
    q = mckay_qp(T).quiver
    ref = make_cone(q.vertex_ids(), q.dims(), oracles.TETRA_CHAMBERS[word])
    assert cone_equal(skeleton_chamber(resolution_of_word(T, word)), ref)
    assert cone_equal(reflection_cone(mckay_qp(T), word), ref)


@pytest.mark.parametrize("spec", CHAMBER_SPECS, ids=str)
def test_stated_chamber_matches_skeleton_chamber(spec):
    nvert = len(mckay_qp(spec).quiver.vertices)
    for res in all_resolutions(spec, mirrors=True):
        sk = skeleton_chamber(res)
        assert cone_equal(stated_chamber(res), sk), res.name
        assert sk.facets == nvert - 1, res.name


@pytest.mark.parametrize("spec", CHAMBER_SPECS, ids=str)
def test_reflection_cone_matches_skeleton_for_every_word(spec):
    root = mckay_qp(spec)
    g = enumerate_class(root, expected_class_size(spec))
    names = set()
    for node in g.nodes:
        res = resolution_of_word(spec, node.word)
        names.add((res.name, res.mirrored))
        assert cone_equal(reflection_cone(root, node.word), skeleton_chamber(res)), node.word
    assert len(names) == len(g.nodes)


@pytest.mark.parametrize("spec", [D(5), D(7), D(6), D(8), T], ids=str)
def test_chamber_adjacency_matches_mutation_graph(spec):
    root = mckay_qp(spec)
    g = enumerate_class(root, expected_class_size(spec))
    cones = [reflection_cone(root, node.word) for node in g.nodes]
    mutation_edges = {(a, b) for a, b, _k in g.undirected_edges()}
    chamber_edges = {(a, b) for a, b in combinations(range(len(cones)), 2) if cones_adjacent(cones[a], cones[b])}
    assert chamber_edges == mutation_edges


def test_chambers_are_disjoint():
    root = mckay_qp(D(6))
    g = enumerate_class(root, expected_class_size(D(6)))
    cones = [reflection_cone(root, node.word) for node in g.nodes]
    for a, b in combinations(cones, 2):
        assert not b.contains(a.interior_point())


def test_pairing_fraction():
    assert pairing({"0": Fraction(1, 2), "1": 3}, {"0": 2, "1": 1}) == 4
