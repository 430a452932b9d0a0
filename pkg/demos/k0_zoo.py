"""
K0 of three module categories
=============================

Split exact sequences are not enough to see structure; K0 is built from
all of them.  Three computations: free rank counting subgroups, length as
the universal additive invariant, and the localization sequence.
"""

from monoidkit.asets import cycle_nset, nat_set, truncated_line
from monoidkit.corpora import all_gamma_asets
from monoidkit.ktheory import (burnside_rank, devissage_check_k0,
                               k0_of_catspec, localization_exactness_k0)
from monoidkit.monoids import FiniteMonoid, NatMonoid
from monoidkit.serre import SerrePredicate

# --- 1. Finite Gamma-sets: K0 is the Burnside ring's underlying group.
for orders in ([2], [3], [2, 2]):
  G = FiniteMonoid.group_with_zero(orders)
  corpus = [X for X, _ in all_gamma_asets(G, 8)]
  k0 = k0_of_catspec(corpus, closure_bound=128)
  n_subs, _ = burnside_rank(G.units())
  print(f"Gamma = {G.units()}: K0 = {k0.group} "
        f"({n_subs} subgroups, {len(corpus)} seed classes)")

# --- 2. Devissage: over N/(t^N) every finite-length object is filtered
# with irreducible steps, so K0 collapses to Z with [X] = length(X).
print()
for N in (2, 3, 4):
  monoid = FiniteMonoid.truncated_free(N - 1)
  rep = devissage_check_k0(monoid, pc=True, max_elements=5)
  print(f"K0 of finite-length pc {monoid.name}-sets = {rep.computed} "
        f"({'classes graded by length' if rep.match else 'MISMATCH'})")

# --- 3. The localization sequence at pi_0.  Seed a corpus of finite
# N-sets, take C = torsion objects, and check
#   K0(C) -> K0(M) -> K0(M/C) -> 0
# is exact: what dies on the right is exactly what came from the left.
N = NatMonoid()
seeds = [truncated_line(4), cycle_nset(1, tail=3),
         nat_set({"a": "r", "b": "r", "r": "*"}, name="fork"),
         nat_set({"a": "c", "b": "c", "c": "c"}, name="fork to a fixed point")]
rep = localization_exactness_k0(seeds, SerrePredicate.torsion(N),
                                closure_bound=64)
print()
print(rep)
