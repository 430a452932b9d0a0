"""
Divisors on a singular cone
===========================

A walk from generators to the divisor class group and on to the graded
pieces of K'0, for the simplest affine monoid with torsion in its class
group.
"""

from monoidkit.affine import AffineMonoid
from monoidkit.ktheory import (class_group, coniveau_k0_report, div_matrix,
                               gersten_exactness_check, w_group)

# The monoid generated by (1,0), (1,1), (1,2) inside Z^2: the cone over a
# quadric.  It is normal but not smooth at the cone point.
A = AffineMonoid.class_group_order_two()
print(f"monoid {A.name}: generators {A.generators}")
print(f"normal: {A.is_normal()}, 0-smooth: {A.is_zero_smooth()}")

# Each facet of the cone carries a valuation; div sends a lattice point to
# its vector of facet valuations.  The class group is the cokernel.
print("\ndivisor matrix (rows = facets):")
for row in div_matrix(A):
  print(f"  {row}")
print(f"class group: Cl = {class_group(A)}")

# Compare: for a free monoid every divisor is principal.
for n in (1, 2, 3):
  print(f"Cl(N^{n}) = {class_group(AffineMonoid.free(n))}")

# The same lattice data, assembled by codimension, filters K'0.  The piece
# in codimension 0 is Z (the rank), codimension 1 is the class group, and
# the top piece W_2 vanishes here, so the extension is visible in full.
report = coniveau_k0_report(A)
print(f"\ngraded pieces: ({', '.join(str(g) for g in report.graded)})")
print(f"W_2 = {w_group(A, 2)}")
print(f"conclusion: K'0({A.name}) = {report.conclusion()}")

# Exactness of the augmented complex is a smoothness test: the free
# monoids pass, and this cone fails with its class group as the witness.
smooth = gersten_exactness_check(AffineMonoid.free(2))
print(f"\nN^2 units-lattice complex: {'exact' if smooth.ok else 'fails'}")
control = gersten_exactness_check(A, strict=False)
print(f"{A.name} complex: H^1 = {control.h(1)} "
      f"(expected failure: {control.expected_failure})")
