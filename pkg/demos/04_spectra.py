"""
Integer spectra certified without floating point
================================================

For a symmetric integer matrix M, an integer λ has multiplicity
nullity(M - λI).  If the predicted multiplicities match and add up to the
dimension, the prediction is the whole spectrum.
"""

# %%
from nilgraph.graph import build_graph, components_classify
from nilgraph.ring import build_ring
from nilgraph.spectra import component_spectrum_prediction, matrix_build, verify_spectrum
from nilgraph.theorems import predict_spectra

# %%
R = build_ring("Z12")
G = build_graph(R)
for target, P in predict_spectra(R).items():
    check = verify_spectrum(matrix_build(G, target), P)
    print(target, P, "certified" if check.ok else "rejected", check.rows)

# %%
# The same spectra assembled from the K_t and K_{t,t} blocks.
D = components_classify(G)
print({k: str(component_spectrum_prediction(D, k)) for k in "ALQ"})

# %%
# A wrong guess fails at the eigenvalue whose nullity disagrees.
from nilgraph.spectra import SpectrumPrediction

A9 = matrix_build(build_graph(build_ring("Z9")), "A")
print(verify_spectrum(A9, SpectrumPrediction.from_multiset([(2, 1), (-2, 1), (0, 4)], "A")))
