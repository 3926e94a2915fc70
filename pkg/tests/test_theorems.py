import math

import pytest
from hypothesis import given, settings

from nilgraph import invariants as inv
from nilgraph import theorems as th
from nilgraph.graph import build_graph, components_classify
from nilgraph.ring import build_ring, factorize, nil_set
from nilgraph.spectra import component_spectrum_prediction

from conftest import ring_specs


def verdicts(text, **kw):
    return {v.theorem: v for v in th.verify_instance(build_ring(text), **kw)}


@pytest.mark.parametrize("text,expected", [("Z18", 3), ("Z9", 4), ("Z12", 4), ("Z15", math.inf), ("Z4", math.inf)])
def test_predict_girth(text, expected):
    assert th.predict_girth(build_ring(text)) == expected


def test_predict_girth_general_ring_branches():
    assert th.predict_girth(build_ring("Z3xZ9")) == 4
    assert th.predict_girth(build_ring("Z2xZ9")) == 3
    assert th.predict_girth(build_ring("Z2xZ3")) == th.NA


@pytest.mark.parametrize("text,expected", [("Z8", 4), ("Z15", 2), ("Z2", 2), ("Z6", 2), ("Z2xZ4", 2)])
def test_predict_clique(text, expected):
    assert th.predict_clique(build_ring(text)) == expected


def test_z2_clique_is_degenerate_mismatch():
    v = verdicts("Z2")["CliqueZn"]
    assert (v.predicted, v.computed, v.status) == (2, 1, th.MISMATCH)
    assert "degenerate" in v.note


@pytest.mark.parametrize("text,paper,derived,oracle", [("Z15", 7, 7, 7), ("Z9", 3, 2, 2), ("Z24", 9, 5, 5)])
def test_predict_dominating_three_way(text, paper, derived, oracle):
    R = build_ring(text)
    p = th.predict_dominating(R)
    assert (p.paper, p.derived) == (paper, derived)
    v = verdicts(text)["DominatingZn"]
    assert v.computed == oracle
    assert f"paper={paper} decomposition={derived} oracle={oracle}" in v.note
    assert v.status == (th.MATCH if paper == oracle else th.MISMATCH)


@pytest.mark.parametrize("text,summary", [("Z9", "1xK3,3"), ("Z12", "1xK2 + 2xK2,2"), ("Z45", "7xK3,3"), ("Z8", "1xK4")])
def test_predict_structure(text, summary):
    assert th.predict_structure(build_ring(text)).summary() == summary


def test_predict_structure_even_product_is_na():
    assert th.predict_structure(build_ring("Z2xZ4")) == th.NA


def test_odd_corollary_count_agrees():
    for n in range(3, 400, 2):
        assert th.predict_structure_zn_odd_corollary(n) == th.predict_structure(build_ring(f"Z{n}"))


def test_predict_spectra_examples():
    A12 = th.predict_spectra(build_ring("Z12"))["A"]
    assert dict(A12.pairs) == {2: 2, -2: 2, 0: 4, -1: 1, 1: 1}
    Q9 = th.predict_spectra(build_ring("Z9"))["Q"]
    assert dict(Q9.pairs) == {6: 1, 0: 1, 3: 4}
    assert th.predict_spectra(build_ring("Z4xZ3")) == th.NA
    assert verdicts("Z4xZ3")["SpectraZn"].status == th.NOT_APPLICABLE


def test_literal_spectra_equal_component_spectra():
    for n in range(2, 301):
        R = build_ring(f"Z{n}")
        G = build_graph(R)
        D = components_classify(G)
        literal = th.predict_spectra_zn(n, G.nil.t)
        for k in "ALQ":
            assert literal[k] == component_spectrum_prediction(D, k), (n, k)
        if n % 2:
            assert th.predict_spectra_odd_ring(n, G.nil.t) == literal


@pytest.mark.parametrize("text,class_v,value_v", [
    ("Z18", th.MATCH, th.MATCH), ("Z8", th.MATCH, th.MISMATCH), ("Z12", th.MATCH, th.MATCH)])
def test_chromatic_index_verdicts(text, class_v, value_v):
    v = verdicts(text)
    assert v["ChromaticIndexClass1"].status == class_v
    assert v["ChromaticIndexEqualsNil"].status == value_v
    if text == "Z8":
        assert (v["ChromaticIndexEqualsNil"].predicted, v["ChromaticIndexEqualsNil"].computed) == (4, 3)


@pytest.mark.parametrize("n,expected", [(12, True), (72, False), (45, True), (24, False), (20, True), (30, th.NA), (8, th.NA)])
def test_predict_bipartite(n, expected):
    assert th.predict_bipartite(n) == expected


@pytest.mark.parametrize("n,a,b,clique", [(15, 7, 7, None), (12, 4, 4, (3, 9)), (45, 21, 21, None)])
def test_construct_bipartition(n, a, b, clique):
    G = build_graph(build_ring(f"Z{n}"))
    w = th.construct_bipartition(G)
    assert (len(w.part_a), len(w.part_b)) == (a, b)
    assert w.clique_part == clique
    part = set(w.part_a)
    assert not any(G.adjacent(x, y) for x in part for y in part)


def test_bipartition_witness_for_every_composite():
    for n in range(4, 401):
        if factorize(n) == {n: 1}:
            continue
        th.construct_bipartition(build_graph(build_ring(f"Z{n}")))


def test_witness_verify_catches_bad_parts(graph_of):
    G = graph_of("Z12")
    bad = th.BipartitionWitness((1, 5), (2, 4, 7, 8, 10, 11), (3, 9))
    with pytest.raises(th.WitnessError):
        bad.verify(G)


def test_verify_instance_z9():
    v = verdicts("Z9")
    assert v["DominatingZn"].status == th.MISMATCH
    assert (v["DominatingZn"].predicted, v["DominatingZn"].computed) == (3, 2)
    for name in ("GirthZn", "CliqueZn", "SpectraZn", "BicliqueCount"):
        assert v[name].status == th.MATCH, name


def test_verify_instance_z12_all_match():
    applicable = [v for v in verdicts("Z12").values() if v.status != th.NOT_APPLICABLE]
    assert applicable and all(v.status == th.MATCH for v in applicable)


def test_verify_instance_z8():
    v = verdicts("Z8")
    bad = [k for k, x in v.items() if x.status == th.MISMATCH]
    assert bad == ["ChromaticIndexEqualsNil"]


def test_verdict_order_and_json_shape():
    vs = th.verify_instance(build_ring("Z18"))
    assert [v.theorem for v in vs] == list(th.THEOREM_IDS)
    row = vs[0].to_json()
    assert list(row) == ["ring", "theorem", "predicted", "computed", "status", "note"]
    girth = next(v for v in th.verify_instance(build_ring("Z15")) if v.theorem == "GirthZn")
    assert girth.to_json()["predicted"] == "inf" and girth.status == th.MATCH


def test_bipartite_hypothesis_is_recorded():
    v = verdicts("Z20")["BipartiteStructure"]
    assert "n=2^2*5^1" in v.full_note and v.status == th.MATCH


def test_caps_become_skipped():
    v = verdicts("Z72", caps=th.Caps(coloring_cap=16))
    assert v["ChromaticIndexClass1"].status == th.SKIPPED
    assert "exceeds cap 16" in v["ChromaticIndexClass1"].note
    v = verdicts("Z72", caps=th.Caps(coloring_cap=24))
    assert v["ChromaticIndexClass1"].status == th.MATCH


@given(ring_specs(max_order=200))
@settings(max_examples=60, deadline=None)
def test_structural_verdicts_match_on_nondegenerate_rings(text):
    R = build_ring(text)
    a = th.analyze_instance(R)
    edgeless = a.graph.edge_count == 0
    for v in a.verdicts:
        if v.theorem in ("DominatingZn", "DominatingRing", "ChromaticIndexEqualsNil"):
            continue
        if len(a.graph.vertices) < 2:
            continue
        if v.theorem == "CliqueRing" and edgeless:
            # Boolean rings such as Z2xZ2: omega is 1, the formula says 2
            assert v.status == th.MISMATCH
            continue
        assert v.status in (th.MATCH, th.NOT_APPLICABLE, th.SKIPPED), (text, v)


@given(ring_specs(max_order=225))
@settings(max_examples=40, deadline=None)
def test_odd_order_rings_decompose_as_predicted(text):
    R = build_ring(text)
    if R.order % 2 == 0:
        return
    v = verdicts(text)
    assert v["DecompositionOdd"].status == th.MATCH
    assert v["BicliqueCount"].status == th.MATCH


def test_clique_ring_mismatch_only_on_edgeless_graphs():
    found = []
    for text in th.product_family(200):
        R = build_ring(text)
        G = build_graph(R)
        if len(G.vertices) < 2:
            continue
        if th.predict_clique(R) != inv.clique_number(G):
            found.append(text)
            assert G.edge_count == 0
    assert found == ["Z2xZ2"]


def test_families():
    assert len(th.zn_family(100)) == 99
    prods = th.product_family(50)
    assert "Z2xZ25" in prods and "Z3xZ9" in prods and "Z9xZ3" not in prods
    assert all(int(a[1:]) <= int(b[1:]) for a, b in (p.split("x") for p in prods))


def test_sweep_dominating_mismatch_set():
    result = th.sweep_verify(th.zn_family(100), workers=1)
    mism = {int(r["ring"][1:]) for r in result.mismatches("DominatingZn")}
    expected = set()
    for n in range(2, 101):
        t = nil_set(build_ring(f"Z{n}")).t
        paper = (n - t) // 2 if n % 2 else (n - 2 * t) // 2 + 1
        derived = th.predict_structure(build_ring(f"Z{n}")).dominating()
        if paper != derived:
            expected.add(n)
    assert mism == expected
    assert {9, 24} <= mism
    assert all(nil_set(build_ring(f"Z{n}")).t >= 3 for n in mism)
    assert not result.mismatches("GirthZn")


def test_sweep_products_odd_decomposition():
    result = th.sweep_verify(th.product_family(50), workers=1)
    rows = result.select("DecompositionOdd")
    odd = [r for r in rows if r["order"] % 2]
    assert odd and all(r["status"] == th.MATCH for r in odd)


def test_sweep_rows_sorted_and_worker_independent():
    rings = th.zn_family(30) + th.product_family(30)
    one = th.sweep_verify(rings, workers=1)
    two = th.sweep_verify(rings, workers=2)
    assert one.rows == two.rows
    keys = [(r["order"], r["ring"], th.THEOREM_RANK[r["theorem"]]) for r in one.rows]
    assert keys == sorted(keys)
