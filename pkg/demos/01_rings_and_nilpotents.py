"""
Rings, nilpotent elements and the two parity lemmas
===================================================

Build a few rings, list their nilpotent elements and look at the element
``m·1`` that every even-order ring carries.
"""

# %%
from nilgraph.ring import build_ring, even_order_witness, nil_set, odd_halving_check, radical

# %%
# Z_n: an element is nilpotent exactly when rad(n) divides it.
for text in ["Z12", "Z18", "Z72", "Z13"]:
    R = build_ring(text)
    nil = nil_set(R)
    print(f"{text:>4}: rad={radical(R.order):>2}  Nil={list(nil.nilpotent_ids)}")

# %%
# Product rings use residue tuples for display.
R = build_ring("Z4xZ9")
print([R.label(x) for x in nil_set(R).nilpotent_ids])

# %%
# Even order: m·1 (|R| = 2^k m, m odd) is not nilpotent but its double is.
for text in ["Z12", "Z8", "Z2xZ9", "Z4xZ6"]:
    R = build_ring(text)
    x = even_order_witness(R)
    print(f"{text:>6}: x = {R.label(x)}, 2x = {R.label(R.add(x, x))}")

# %%
# Odd order: 2x nilpotent forces x nilpotent.  Even order breaks it.
for text in ["Z9", "Z15", "Z3xZ9", "Z12"]:
    print(text, odd_halving_check(build_ring(text)))
