"""
Inverting t without leaving finite sets
=======================================

The Serre quotient of finite N-sets by torsion objects, computed through
windows: subobject/quotient pairs small enough to enumerate, large enough
to remember every morphism of the localized category.
"""

from monoidkit.asets import cycle_nset, nat_set, truncated_line
from monoidkit.serre import (SerrePredicate, canonical_window, hom_maps,
                             hom_quotient, is_iso_quotient,
                             localized_hom_count, monic_representative)

# Two N-sets with the same periodic behaviour but different transient fuzz:
# a 2-cycle, and the same 2-cycle wearing a tail.
bare = cycle_nset(2)
tailed = cycle_nset(2, tail=2)
print(f"X = {bare.name} ({bare.size()} elements), "
      f"Y = {tailed.name} ({tailed.size()} elements)")

# Torsion objects are those killed by a power of t.  They form a Serre
# subcategory C: closed under subobjects, quotients, and extensions.
pred = SerrePredicate.torsion(bare.monoid)

# In the plain category the tail blocks any isomorphism.
print(f"honest maps X -> Y: {len(hom_maps(bare, tailed))}, "
      f"Y -> X: {len(hom_maps(tailed, bare))}")

# The quotient M/C computes a hom set at one canonical window: restrict the
# source to its smallest dense subobject, crush the largest torsion part of
# the target.
w = canonical_window(tailed, bare, pred)
print(f"canonical window for Y -> X: source shrinks to {sorted(w.xsub)}, "
      f"target kernel {sorted(w.ykernel)}")

fs = hom_quotient(tailed, bare, pred)
print(f"maps Y -> X in M/C: {len(fs)}")

# One of them is invertible, and inverting t is the reason: both objects
# localize to the same 2-cycle.  The monic representative realizes the
# isomorphism by an honest injection at the window.
iso = next(f for f in fs if is_iso_quotient(f))
m = monic_representative(iso)
print(f"an iso in the quotient, represented by the injection "
      f"{sorted(m.mapping.items())}")

# An independent model agrees pairwise on hom counts: localizing at (t)
# retracts every finite N-set onto its periodic part.
for X in (bare, tailed, truncated_line(3),
          nat_set({"a": "r", "b": "r", "r": "*"}, name="fork")):
  q = len(hom_quotient(X, bare, pred))
  loc = localized_hom_count(X, bare, ["(t)"])
  print(f"  |Hom({X.name}, {bare.name})|: quotient {q}, localized {loc}")
