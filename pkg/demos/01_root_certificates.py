"""Walk through one-sided certificates for a small root system.

Run with: python3 demos/01_root_certificates.py
"""
from hellyfix.roots import (build_root_system, generator_collection, gordan_witness, one_sided_certificate,
                            property3_witness, verify_roots2)

rs = build_root_system("G", 2)
print(rs.name, "has", len(rs), "roots")

# the collection: simple roots plus the lowest root
coll = generator_collection(rs)
print("collection:", [a.coeffs for a in coll])

# each proper subset sits on one side of a hyperplane
for a in coll:
    rest = [b for b in coll if b != a]
    g = one_sided_certificate(rs, rest)
    print(f"  drop {a.coeffs}: gamma = {[str(x) for x in g.coords]}")

# the whole collection does not; a zero-sum combination proves it
y = gordan_witness(rs, list(coll))
print("full collection zero-sum weights:", [str(w) for w in y])

rep = verify_roots2(rs, exhaustive=True)
print(len(rep.certificates), "certificates, all re-verified:", rep.ok)

# every root splits as a sum of two roots lying in one positive system
for a in rs.all_roots[:4]:
    w = property3_witness(rs, a)
    print(f"  {a.coeffs} = {w.sigma.coeffs} + {w.delta.coeffs}")
