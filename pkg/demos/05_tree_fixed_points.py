"""Isometries of metric trees and their fixed points.

Run with: python3 demos/05_tree_fixed_points.py
"""
import random

from hellyfix.trees import (ActionSpec, circumcenter, classify, common_fixed_point, finite_group_fixed_point,
                            integer_line, line_reflection, line_translation, normalizer_invariance_check,
                            random_elliptic_family, random_symmetric_tree)
from hellyfix.suites import resolve

spec = ActionSpec.load(resolve("tripod-rotations.json"))
print("tripod rotation fixes", finite_group_fixed_point(spec.tree, spec))

spec = ActionSpec.load(resolve("double-star.json"))
c = classify(spec.tree, spec.generators["c"])
print("double-star inversion:", c.kind, "fixes", [str(p) for p in c.fix.points(spec.tree)])

line = integer_line()
t = classify(line, line_translation(3))
print("translation by 3 on the line:", t.kind, "tau", t.tau)
res = common_fixed_point(line, [line_reflection(0), line_reflection(4)])
print("reflections at 0 and 4 share no fixed point; pair", res.disjoint_pair)
print("t2 acts on the axis of t1 by", normalizer_invariance_check(line, line_translation(1), line_translation(2)).translation)

rng = random.Random(3)
tree, swaps = random_symmetric_tree(rng)
fam = random_elliptic_family(rng, tree, swaps, k=3)
print(f"random tree with {len(tree)} vertices: common fixed point {common_fixed_point(tree, fam).point}")
print("its circumcenter", circumcenter(tree, [tree.vertex_point(v) for v in tree.vertices]))
