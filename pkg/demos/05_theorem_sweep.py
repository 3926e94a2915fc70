"""
Sweeping ring families
======================

Every closed-form claim is checked against the exact value on each ring.
Most hold everywhere; the domination formulas and the claim that the
chromatic index equals |Nil(R)| fail on specific rings.
"""

# %%
from nilgraph.ring import build_ring
from nilgraph.theorems import product_family, sweep_verify, verify_instance, zn_family

# %%
for v in verify_instance(build_ring("Z9")):
    print(f"{v.theorem:<24} {v.status:<13} {v.to_json()['predicted']!s:>6} {v.to_json()['computed']!s:>6}")

# %%
result = sweep_verify(zn_family(100) + product_family(100))
for theorem, counts in result.counts().items():
    print(f"{theorem:<24} {counts}")

# %%
print("domination mismatches:", [r["ring"] for r in result.mismatches("DominatingZn")])
print("chi' != |Nil|:", [r["ring"] for r in result.mismatches("ChromaticIndexEqualsNil")])
print("clique formula on general rings:", [r["ring"] for r in result.mismatches("CliqueRing")])
