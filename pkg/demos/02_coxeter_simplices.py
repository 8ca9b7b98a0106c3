"""Classify a few Coxeter simplex groups two ways.

Run with: python3 demos/02_coxeter_simplices.py
"""
from hellyfix.coxeter import CoxeterMatrix, coxeter_simplex_check
from hellyfix.suites import resolve

for p, q, r in [(2, 3, 5), (3, 3, 3), (2, 3, 7)]:
    rep = coxeter_simplex_check(CoxeterMatrix.triangle(p, q, r))
    print(f"({p},{q},{r})", rep.summary, "eigen signature", rep.eigen_signature)

# compact hyperbolic tetrahedra: the finite parabolics form the boundary of a simplex
for cm in CoxeterMatrix.load_all(resolve("lanner-rank4.json"))[:3]:
    rep = coxeter_simplex_check(cm)
    print(cm.name, rep.classification, "nerve reduced betti", rep.nerve_betti)

rep = coxeter_simplex_check(CoxeterMatrix.load(resolve("not-simplex-363.json")))
print("linear 3-6-3:", rep.summary)
