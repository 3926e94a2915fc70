"""
The nilpotent graph and its components
======================================

Vertices are the non-nilpotent elements; x and y are joined when x + y is
nilpotent.  Every component turns out to be a clique K_t or a balanced
biclique K_{t,t}, where t = |Nil(R)|.
"""

# %%
from nilgraph.graph import build_graph, components_classify, degree_check, is_bipartite_with_parts, to_dot
from nilgraph.ring import build_ring
from nilgraph.theorems import construct_bipartition

# %%
G = build_graph(build_ring("Z12"))
print(G)
print("edges:", G.edges)
print(components_classify(G).summary())

# %%
# Degrees are t - 1 on vertices with a nilpotent double, t elsewhere.
for x, actual, predicted in degree_check(G).rows:
    print(x, actual, predicted)

# %%
for text in ["Z18", "Z45", "Z2xZ9", "Z3xZ9", "Z2xZ4", "Z2xZ2"]:
    D = components_classify(build_graph(build_ring(text)))
    print(f"{text:>6}: {D.summary()}")

# %%
# Bipartiteness, with an odd cycle as the certificate when it fails.
for text in ["Z9", "Z12", "Z8", "Z72"]:
    ok, cert = is_bipartite_with_parts(build_graph(build_ring(text)))
    print(text, "bipartite" if ok else f"odd cycle {cert}")

# %%
# Residue classes modulo rad(n) give an explicit bipartition.
w = construct_bipartition(build_graph(build_ring("Z12")))
print("A =", w.part_a, " B =", w.part_b, " clique =", w.clique_part)

# %%
print(to_dot(build_graph(build_ring("Z5"))))
