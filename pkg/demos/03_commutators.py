"""Elementary matrices of SL_n: commutators and nilpotency.

Run with: python3 demos/03_commutators.py
"""
import random

from hellyfix import chevalley as chv
from hellyfix.poly import RingSpec

ring = RingSpec.parse("Z[x1,x2]")
x1, x2 = ring.gens()
a, b = chv.TypeARoot(1, 2), chv.TypeARoot(2, 3)
r = chv.verify_commutator_formula(3, a, b, x1, x2)
print(f"[x_{a}(x1), x_{b}(x2)] matches the formula:", r.ok)

# random samples never change the structure constants
table = chv.StructureConstantTable()
rng = random.Random(1)
for _ in range(20):
    chv.verify_commutator_formula(4, a, b, ring.random(rng), ring.random(rng), table)
print("constants:", table.to_json()[:2])

small = RingSpec.parse("Z/4,trunc 3")
simple = [chv.TypeARoot(1, 2), chv.TypeARoot(2, 3)]
res = chv.subset_nilpotency(3, simple, small)
print("simple roots over Z/4 trunc 3:", res.status, "class", res.nilpotency_class)

full = chv.collection_roots(3)
print("full collection digraph acyclic:", chv.digraph_acyclicity(3, full).acyclic)
