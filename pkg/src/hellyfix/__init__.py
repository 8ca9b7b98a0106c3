"""Exact verification of Helly-type fixed-point combinatorics.

Submodules
----------
roots      root systems, generator collections, one-sided certificates
coxeter    Coxeter simplex groups: exact minors and eigenvalue intervals
poly       sparse polynomials over Z or Z/m, optionally truncated
chevalley  elementary matrices of SL_n, commutator identities, nilpotency
homology   simplicial complexes, Smith normal form, reduced homology
nerve      nerves of convex families, Helly and Leray checks
trees      metric trees, isometry classification, fixed points
lp         exact linear feasibility
report     verification reports
"""
from .chevalley import (TypeARoot, commutator, digraph_acyclicity, p_power_witness, subset_nilpotency,
                        verify_commutator_formula, x_elem)
from .coxeter import CoxeterMatrix, coxeter_simplex_check
from .homology import HomologyProfile, SimplicialComplex, boundary_matrices, reduced_homology, smith_normal_form
from .lp import feasible_point
from .nerve import ConvexFamily, helly_verify, leray_consistency, nerve
from .poly import RingElement, RingSpec
from .report import VerificationReport
from .roots import (RootSystem, build_root_system, generator_collection, highest_root, one_sided_certificate,
                    positive_system, property3_witness, strict_separator, verify_roots2)
from .trees import (ActionSpec, MetricTree, TreeIsometry, TreePoint, circumcenter, classify, common_fixed_point,
                    finite_group_fixed_point, fix_subtree, minset, normalizer_invariance_check)

__version__ = "0.1.0"
