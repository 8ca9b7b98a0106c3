"""Nerves, Helly checks and nerve-versus-union homology.

Run with: python3 demos/04_nerves_and_helly.py
"""
import json
import random

from hellyfix.homology import reduced_homology
from hellyfix.nerve import ConvexFamily, helly_verify, leray_consistency, nerve, random_subtree_family
from hellyfix.suites import resolve


def load(name):
    return ConvexFamily.from_json(json.loads(resolve(name).read_text()))


arcs = load("circle-arcs.json")
n = nerve(arcs)
print("three arcs of a hexagon: nerve f-vector", n.f_vector(), "betti", reduced_homology(n).betti)

for name in ["helly-subtrees.json", "helly-triangles.json", "helly-lines.json"]:
    r = helly_verify(load(name))
    print(f"{name}: hypothesis {r.hypothesis}, conclusion {r.conclusion}, witness {r.witness}")

fam = random_subtree_family(random.Random(7))
r = helly_verify(fam)
print(f"random family of {len(fam)} subtrees meets at vertex {r.witness}")

for name in ["annulus.json", "non-good-cover.json"]:
    r = leray_consistency(load(name))
    print(f"{name}: {r.status}")
