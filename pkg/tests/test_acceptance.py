"""Acceptance run: one PASS/FAIL line per criterion.

    pytest tests/test_acceptance.py          # lines appear in an "acceptance" summary section
    python tests/test_acceptance.py          # plain runner, exit 1 on any FAIL
"""

from __future__ import annotations

import json
import os
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from qpmckay.geomreport import dual_graph, flop_graph_check  # noqa: E402
from qpmckay.grouprep import GroupSpec, build_group, character_table  # noqa: E402
from qpmckay.mckay import build_mckay_quiver, mckay_qp  # noqa: E402
from qpmckay.mutclass import (  # noqa: E402
    apply_word,
    count_up_to_symmetry,
    enumerate_class,
    expected_class_size,
)
from qpmckay.qp import (  # noqa: E402
    adjacency_signature,
    canonical_rotation,
    eliminated_arrows,
    mutate,
    premutate,
    qp_from_json,
    qp_to_json,
    reduce,
)
from qpmckay.resolutions import (  # noqa: E402
    all_resolutions,
    cover_charts,
    cover_skeletons,
    resolution_of_word,
    skeleton_chamber,
    stated_chamber,
)
from qpmckay.skeletons import cyclic3_charts  # noqa: E402
from qpmckay.stability import (  # noqa: E402
    bilinear_form,
    cone_equal,
    pairing,
    reflect_dim,
    reflect_theta,
    reflection_cone,
    verify_skeleton_relations,
)

C = lambda n: GroupSpec("C", n)  # noqa: E731
D = lambda n: GroupSpec("D", n)  # noqa: E731
T, O, I = GroupSpec("T"), GroupSpec("O"), GroupSpec("I")

TABLE_SPECS = [C(n) for n in range(3, 10)] + [D(n) for n in range(4, 11)] + [T, O, I]
CHAMBER_SPECS = [D(5), D(7), D(9), D(4), D(6), D(8), T]
CLASS_SPECS = [C(n) for n in range(3, 10)] + [D(n) for n in (5, 7, 9, 11, 13, 4, 6, 8, 10, 12)] + [T]
TETRA_SWAP = {"b": "c", "c": "b", "B": "C", "C": "B"}

_classes: dict = {}


def klass(spec):
    if str(spec) not in _classes:
        _classes[str(spec)] = enumerate_class(mckay_qp(spec), expected_class_size(spec))
    return _classes[str(spec)]


def _elapsed(start):
    return time.perf_counter() - start


# ---------------------------------------------------------------------------
# criteria; each raises AssertionError with a short reason on failure


def criterion_1():
    start = time.perf_counter()
    for spec in TABLE_SPECS:
        got = [list(r) for r in character_table(build_group(spec))]
        if spec.family == "Cyclic":
            ref = oracles.cyclic_table(spec.param)
        elif spec.family == "Dihedral":
            ref = oracles.dihedral_table(spec.param)[1]
        else:
            ref = {"T": oracles.tetrahedral_table, "O": oracles.octahedral_table, "I": oracles.icosahedral_table}[
                spec.family[0]
            ]()
        assert got == ref, f"{spec}: table differs"
    took = _elapsed(start)
    assert took < 2, f"took {took:.2f}s"
    return f"{len(TABLE_SPECS)} tables in {took:.2f}s"


def _ref_arrows(spec):
    if spec.family == "Cyclic":
        return oracles.cyclic_arrows(spec.param)
    if spec.family == "Dihedral":
        return oracles.dihedral_arrows(spec.param)
    return {"T": oracles.TETRAHEDRAL_ARROWS, "O": oracles.OCTAHEDRAL_ARROWS, "I": oracles.ICOSAHEDRAL_ARROWS}[
        spec.family[0]
    ]


def criterion_2():
    for spec in TABLE_SPECS:
        build_group(spec)
    start = time.perf_counter()
    for spec in TABLE_SPECS:
        q = build_mckay_quiver(build_group(spec))
        ids = q.vertex_ids()
        ref = Counter((t, h) for _a, t, h in _ref_arrows(spec))
        sig = adjacency_signature(q)
        want = tuple(tuple(ref[(i, j)] for j in ids) for i in ids)
        assert sig == want, f"{spec}: adjacency differs"
    assert mckay_qp(T).quiver.loops_at("3") == 2
    took = _elapsed(start)
    assert took < 1, f"took {took:.2f}s"
    return f"{len(TABLE_SPECS)} quivers in {took:.2f}s"


def _ref_potential(spec):
    if spec.family == "Cyclic":
        return oracles.cyclic_potential(spec.param)
    if spec.family == "Dihedral":
        return oracles.dihedral_potential(spec.param)
    if spec.family == "Tetrahedral":
        return {tuple(TETRA_SWAP.get(x, x) for x in k): v for k, v in oracles.tetrahedral_potential().items()}
    return {"O": oracles.octahedral_potential, "I": oracles.icosahedral_potential}[spec.family[0]]()


def criterion_3():
    start = time.perf_counter()
    problems = []
    for spec in TABLE_SPECS:
        got = dict(mckay_qp(spec).potential.items())
        ref = {canonical_rotation(k): v for k, v in _ref_potential(spec).items()}
        if spec.family == "Cyclic":
            if got != ref:
                problems.append(f"{spec}: not coefficient-exact")
            continue
        if set(got) != set(ref):
            problems.append(f"{spec}: support differs")
            continue
        cyc = next(iter(ref))
        scalar = got[cyc] / ref[cyc]
        bad = [k for k in ref if got[k] != ref[k] * scalar]
        if bad:
            problems.append(f"{spec}: no global scalar, off at {['*'.join(k) for k in bad]}")
    took = _elapsed(start)
    assert not problems, "; ".join(problems)
    assert took < 5, f"took {took:.2f}s"
    return f"{len(TABLE_SPECS)} potentials in {took:.2f}s"


def criterion_4():
    root = mckay_qp(D(6))
    pre = premutate(root, "0'")
    mu = mutate(root, "0'")
    assert set(eliminated_arrows(pre, mu)) == oracles.MU0P_D12_ELIMINATED, "eliminated arrows differ"
    assert adjacency_signature(mu) == oracles.MU0P_D12_ADJACENCY, "adjacency differs"
    orbits = {canonical_rotation(c) for c in oracles.MU0P_D12_ORBITS}
    assert set(mu.potential.cycles()) == orbits, "potential support differs"
    return f"{len(orbits)} orbits"


def criterion_5():
    slowest = 0.0
    for spec in CLASS_SPECS:
        start = time.perf_counter()
        g = enumerate_class(mckay_qp(spec), expected_class_size(spec))
        slowest = max(slowest, _elapsed(start))
        _classes[str(spec)] = g
        n, m = spec.param, spec.param // 2
        if spec.family == "Cyclic":
            want = 1
        elif spec.family == "Tetrahedral":
            want = 5
        elif n % 2:
            want = m + 1
        else:
            want = (m + 1) ** 2
            swap = {str(m): f"{m}'", f"{m}'": str(m)}
            orbits = count_up_to_symmetry(g, [{}, swap])
            assert orbits == (m + 1) * (m + 2) // 2, f"{spec}: {orbits} orbits"
        assert len(g.nodes) == want, f"{spec}: {len(g.nodes)} nodes, want {want}"
    assert slowest < 10, f"slowest enumeration {slowest:.2f}s"
    return f"{len(CLASS_SPECS)} classes, slowest {slowest:.2f}s"


def criterion_6():
    checked = 0
    for spec in CLASS_SPECS:
        for node in klass(spec).nodes:
            qp = node.qp
            for k in qp.quiver.vertex_ids():
                if k == qp.trivial or qp.quiver.loops_at(k):
                    continue
                back = mutate(mutate(qp, k), k)
                assert adjacency_signature(back) == node.signature, f"{spec} {node.word} at {k}"
                checked += 1
            once = reduce(qp)
            assert once.potential == qp.potential and reduce(once).potential == once.potential, f"{spec} {node.word}"
    return f"{checked} double mutations"


def criterion_7():
    total = 0
    for spec in CHAMBER_SPECS:
        nvert = len(mckay_qp(spec).quiver.vertices)
        for res in all_resolutions(spec, mirrors=True):
            sk = skeleton_chamber(res)
            assert cone_equal(sk, stated_chamber(res)), f"{spec} {res.name}"
            assert sk.facets == nvert - 1, f"{spec} {res.name}: {sk.facets} facets"
            total += 1
    return f"{total} chambers"


def criterion_8():
    words = 0
    for spec in CHAMBER_SPECS:
        root = mckay_qp(spec)
        for node in klass(spec).nodes:
            sk = skeleton_chamber(resolution_of_word(spec, node.word))
            assert cone_equal(reflection_cone(root, node.word), sk), f"{spec} {node.word}"
            words += 1
    rng = random.Random(20261018)
    samples = 0
    for spec in CHAMBER_SPECS:
        q = mckay_qp(spec).quiver
        ids = q.vertex_ids()
        free = [v for v in ids if not q.loops_at(v)]
        for _ in range(200):
            i = rng.choice(free)
            alpha = {v: rng.randint(-9, 9) for v in ids}
            theta = {v: Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for v in ids}
            s = reflect_dim(q, i, alpha)
            assert pairing(reflect_theta(q, i, theta), s) == pairing(theta, alpha), f"{spec} at {i}"
            assert bilinear_form(q, s, s) == bilinear_form(q, alpha, alpha)
            samples += 1
    return f"{words} words, {samples} duality samples"


def _shape(dg):
    degrees = sorted(dg.degree(v) for v, _ in dg.nodes)
    if dg.is_path():
        return "chain"
    n = len(dg.nodes)
    if len(dg.edges) == n and degrees.count(1) == 1:
        return "closed fork"
    if len(dg.edges) == n - 1 and degrees.count(3) == 1:
        return "open fork"
    return "other"


def criterion_9():
    graphs = 0
    for spec in CHAMBER_SPECS + [D(11), D(10), C(3)]:
        g = klass(spec)
        assert flop_graph_check(g), f"{spec}: flop graph"
        if spec.family != "Dihedral":
            continue
        n, m, even = spec.param, spec.param // 2, spec.param % 2 == 0
        table = oracles.even_curve_type if even else oracles.odd_curve_type
        for node in g.nodes:
            res = resolution_of_word(spec, node.word)
            dg = dual_graph(node.qp)
            pairs = oracles.curve_pairs(cover_charts(res), even)
            known = Counter(t for t in (table(p, q, m) for p, q in pairs) if t)
            got = dg.type_multiset()
            assert sum(got.values()) == len(pairs), f"{spec} {res.name}: curve count"
            assert all(got[t] >= c for t, c in known.items()), f"{spec} {res.name}: curve types"
            if not even:
                want = "chain"
            elif res.j < 0 and res.i <= m - 2:
                want = "closed fork"
            elif res.j < 0 and res.i == m - 1:
                want = "open fork"
            else:
                want = "chain"
            assert _shape(dg) == want, f"{spec} {res.name}: {_shape(dg)}, want {want}"
            graphs += 1
    # tetrahedral graphs, listed explicitly
    root = mckay_qp(T)
    m11, m20, m31 = (-1, -1), (-2, 0), (-3, 1)
    want = {
        (): ({"1": m11, "2": m11, "3": m31}, {("1", "3"), ("2", "3")}),
        ("1",): ({"1": m11, "2": m11, "3": m20}, {("1", "3"), ("2", "3")}),
        ("2",): ({"1": m11, "2": m11, "3": m20}, {("1", "3"), ("2", "3")}),
        ("1", "2"): ({"1": m11, "2": m11, "3": m11}, {("1", "3"), ("2", "3")}),
        ("1", "2", "3"): ({"1": m20, "2": m20, "3": m11}, {("1", "2"), ("1", "3"), ("2", "3")}),
    }
    for word, (types, edges) in want.items():
        dg = dual_graph(apply_word(root, word))
        assert dict(dg.nodes) == types, f"T {word}: types"
        assert {tuple(sorted(e)) for e in dg.edges} == edges, f"T {word}: edges"
        graphs += 1
    return f"{graphs} dual graphs"


def criterion_10():
    seen = {}
    for spec in CHAMBER_SPECS:
        for res in all_resolutions(spec, mirrors=True):
            for sk in cover_skeletons(res):
                seen[(str(spec), sk.chart, res.mirrored)] = (spec, sk)
    for sk in cyclic3_charts():
        seen[("C3", sk.chart, False)] = (C(3), sk)
    for key, (spec, sk) in seen.items():
        assert verify_skeleton_relations(mckay_qp(spec), sk), f"{key}"
    return f"{len(seen)} skeletons"


def criterion_11():
    nodes = 0
    for spec in CLASS_SPECS:
        for node in klass(spec).nodes:
            text = qp_to_json(node.qp)
            again = qp_to_json(qp_from_json(text))
            assert again == text, f"{spec} {node.word}"
            assert json.loads(again) == json.loads(text)
            nodes += 1
    return f"{nodes} nodes"


CRITERIA = [
    (1, "character tables", criterion_1),
    (2, "McKay quivers", criterion_2),
    (3, "potentials", criterion_3),
    (4, "worked mutation", criterion_4),
    (5, "mutation-class counts", criterion_5),
    (6, "involution and reduce", criterion_6),
    (7, "chambers", criterion_7),
    (8, "reflection correspondence", criterion_8),
    (9, "flop dictionary", criterion_9),
    (10, "skeleton soundness", criterion_10),
    (11, "serialization", criterion_11),
]

# the octahedral display gives u^3 and v^3 opposite signs; the terms D*d*v and
# D*u*d force v and u to scale together under any change of arrow basis, so
# no potential of this quiver can match it up to one scalar
KNOWN_FAIL = {3: "octahedral v^3 coefficient of the display is inconsistent; see decisions ledger"}


def run_criterion(number, title, fn):
    try:
        detail = fn()
    except AssertionError as exc:
        return False, f"FAIL criterion {number:2d} {title}: {str(exc).splitlines()[0]}"
    return True, f"PASS criterion {number:2d} {title}: {detail}"


# collected by the terminal summary hook in conftest.py
LINES: list[str] = []


@pytest.mark.parametrize(
    "number,title,fn",
    [
        pytest.param(*c, marks=pytest.mark.xfail(strict=True, reason=KNOWN_FAIL[c[0]]))
        if c[0] in KNOWN_FAIL
        else c
        for c in CRITERIA
    ],
    ids=[f"criterion{c[0]}" for c in CRITERIA],
)
def test_criterion(number, title, fn):
    ok, line = run_criterion(number, title, fn)
    LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, line = run_criterion(number, title, fn)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
