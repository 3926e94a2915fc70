import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilgraph.graph import build_graph, components_classify
from nilgraph.ring import build_ring
from nilgraph.spectra import (
    ExactMatrix,
    SpectrumPrediction,
    UnclassifiableComponent,
    bareiss_rank,
    component_spectrum_prediction,
    matrix_build,
    nullity,
    verify_spectrum,
)
from nilgraph.graph import ComponentDecomposition, Component, OTHER

from conftest import ring_specs


def spec(pairs, target="A"):
    return SpectrumPrediction.from_multiset(pairs, target)


def numeric_spectrum(M):
    vals = np.linalg.eigvalsh(np.array(M.entries, dtype=float))
    out = {}
    for v in np.rint(vals).astype(int):
        out[int(v)] = out.get(int(v), 0) + 1
    assert np.allclose(vals, np.rint(vals), atol=1e-8)
    return out


def test_matrix_build_z5(graph_of):
    G = graph_of("Z5")
    A = matrix_build(G, "A")
    ones = {(G.vertices[i], G.vertices[j]) for i in range(4) for j in range(4) if A[i, j]}
    assert ones == {(1, 4), (4, 1), (2, 3), (3, 2)}
    L = matrix_build(G, "L")
    assert all(sum(row) == 0 for row in L.entries)


@given(ring_specs(max_order=100))
@settings(max_examples=40, deadline=None)
def test_matrix_identities(text):
    G = build_graph(build_ring(text))
    A, D, L, Q = (matrix_build(G, k) for k in "ADLQ")
    for M in (A, L, Q):
        assert M.is_symmetric()
    assert A.trace() == 0
    assert all(sum(r) == 0 for r in L.entries)
    n = A.dim
    assert all(Q[i, j] == L[i, j] + 2 * A[i, j] for i in range(n) for j in range(n))
    assert all(L[i, j] == D[i, j] - A[i, j] for i in range(n) for j in range(n))


@pytest.mark.parametrize("rows,expected", [
    ([[0, 0, 0]] * 3, 3),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 0),
    ([[-1, 1], [1, -1]], 1),
])
def test_nullity_examples(rows, expected):
    assert nullity(ExactMatrix(tuple(map(tuple, rows)))) == expected


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32), st.integers(1, 4))
@settings(max_examples=150, deadline=None)
def test_bareiss_rank_matches_sympy(nr, nc, seed, span):
    rng = random.Random(seed)
    rows = [[rng.randint(-span, span) for _ in range(nc)] for _ in range(nr)]
    # force some dependent rows
    if nr > 2:
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    assert bareiss_rank(rows) == sympy.Matrix(rows).rank()


@given(st.integers(2, 8), st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_nullity_symmetric_blocks_matches_sympy(n, seed):
    rng = random.Random(seed)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if rng.random() < 0.4:
                rows[i][j] = rows[j][i] = rng.randint(-2, 2)
    M = ExactMatrix(tuple(map(tuple, rows)))
    assert nullity(M) == n - sympy.Matrix(rows).rank()


def test_verify_spectrum_examples(graph_of):
    A12 = matrix_build(graph_of("Z12"), "A")
    assert verify_spectrum(A12, spec([(2, 2), (-2, 2), (0, 4), (-1, 1), (1, 1)])).ok
    L9 = matrix_build(graph_of("Z9"), "L")
    assert verify_spectrum(L9, spec([(6, 1), (0, 1), (3, 4)], "L")).ok
    A9 = matrix_build(graph_of("Z9"), "A")
    bad = verify_spectrum(A9, spec([(2, 1), (-2, 1), (0, 4)]))
    assert not bad.ok
    assert [r for r in bad.rows if r[1] != r[2]][0][0] == 2


def test_verify_spectrum_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        verify_spectrum(ExactMatrix(((0, 1), (0, 0))), spec([(0, 2)]))


def test_verify_spectrum_needs_full_multiplicity(graph_of):
    A = matrix_build(graph_of("Z5"), "A")
    chk = verify_spectrum(A, spec([(1, 2)]))
    assert not chk.ok and chk.rows[0][1] == chk.rows[0][2]


@given(st.permutations([(2, 2), (-2, 2), (0, 4), (-1, 1), (1, 1)]))
@settings(max_examples=20, deadline=None)
def test_verify_spectrum_order_invariant(pairs):
    A12 = matrix_build(build_graph(build_ring("Z12")), "A")
    P = SpectrumPrediction(tuple(pairs), "A")
    assert verify_spectrum(A12, P).ok


def test_component_prediction_examples(graph_of):
    D18 = components_classify(graph_of("Z18"))
    assert component_spectrum_prediction(D18, "A").pairs == ((3, 2), (2, 1), (0, 8), (-1, 2), (-3, 2))
    D15 = components_classify(graph_of("Z15"))
    assert component_spectrum_prediction(D15, "A").pairs == ((1, 7), (-1, 7))
    k2 = ComponentDecomposition((Component((3, 9), "complete", None, 1),))
    assert component_spectrum_prediction(k2, "A").pairs == ((1, 1), (-1, 1))


def test_component_prediction_rejects_other():
    D = ComponentDecomposition((Component((1, 2, 3), OTHER, None, 2),))
    with pytest.raises(UnclassifiableComponent):
        component_spectrum_prediction(D, "A")


@given(ring_specs(max_order=150))
@settings(max_examples=60, deadline=None)
def test_component_prediction_certifies_and_matches_numeric(text):
    G = build_graph(build_ring(text))
    D = components_classify(G)
    for target in "ALQ":
        P = component_spectrum_prediction(D, target)
        M = matrix_build(G, target)
        assert verify_spectrum(M, P).ok
        assert dict(P.pairs) == numeric_spectrum(M)
    L = component_spectrum_prediction(D, "L")
    assert sum(lam * m for lam, m in L.pairs) == 2 * G.edge_count


def test_spectrum_json_sorted_descending():
    P = spec([(0, 2), (3, 1), (-3, 1)])
    assert P.to_json() == [{"lambda": 3, "mult": 1}, {"lambda": 0, "mult": 2}, {"lambda": -3, "mult": 1}]
