"""
Exact invariants
================

Girth, clique number, domination number and both chromatic numbers come from
exact searches that know nothing about the closed forms.
"""

# %%
from nilgraph import invariants as inv
from nilgraph.graph import build_graph
from nilgraph.ring import build_ring

# %%
rows = []
for text in ["Z8", "Z9", "Z12", "Z15", "Z18", "Z24", "Z2xZ9", "Z3xZ9"]:
    G = build_graph(build_ring(text))
    rep = inv.compute_invariants(G)
    rows.append((text, rep.to_json()))
for text, js in rows:
    js.pop("skipped")
    print(f"{text:>6}", js)

# %%
# Colouring edge xy with x + y is always proper but can waste colours.
G = build_graph(build_ring("Z8"))
print("x+y colours:", sorted(inv.constructive_edge_coloring(G).colours))
print("exact:", inv.chromatic_index(G))

# %%
# Components above the colouring cap are reported, not silently searched.
try:
    inv.chromatic_index(build_graph(build_ring("Z72")), cap=16)
except inv.CapExceeded as exc:
    print(exc)
print(inv.chromatic_index(build_graph(build_ring("Z72")), cap=24))
