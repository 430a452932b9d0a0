"""Distinguished squares and the nine-object subquotient diagram.

A square of horizontal monics and vertical comparison maps is distinguished
when the induced map of cokernels is an isomorphism; distinguished squares of
admissible maps are simultaneously pushouts and pullbacks.

``key_diagram`` assembles, from two exact sequences into a common object X,
the full lattice picture: the intersection and union of the two subobjects
on the monic side, the corresponding tower of quotients on the epic side, and
the two derived exact sequences.  Its ``verify`` method checks every claimed
universal property that actually holds in the ambient category, plus the
poset-level (double-categorical) ones for the quotient square.  The quotient
square is NOT an ambient fiber product in general — see ``KeyDiagram.verify``
for the three-element counterexample — so the pullback property on that side
is the kernel-comparison / lattice version.
"""

from __future__ import annotations

from .asets import (ASetMap, ExactSeq, coequalizer, fiber_product, is_exact,
                    product, pushout_monics, wedge)
from .errors import InvalidStructure


def induced_cokernel_map(bottom, top, left, right):
  """The map Y'/X' → Y/X induced by a commuting square.

  Square layout (horizontal maps monic, verticals arbitrary comparison maps):

      X  >--top-->  Y
      ^             ^
    left          right
      |             |
      X' >-bottom-> Y'

  Returns (map, coker_bottom_seq, coker_top_seq).
  """
  if not (bottom.source.same_carrier(left.source)
          and bottom.target.same_carrier(right.source)
          and top.source.same_carrier(left.target)
          and top.target.same_carrier(right.target)):
    raise InvalidStructure("square corners do not match up")
  for x in bottom.source.elements:
    if right(bottom(x)) != top(left(x)):
      raise InvalidStructure("square does not commute")
  if not bottom.is_injective() or not top.is_injective():
    raise InvalidStructure("horizontal maps must be monic")
  qb, proj_b = bottom.target.quotient_by(bottom.image_set())
  qt, proj_t = top.target.quotient_by(top.image_set())
  # quotients keep survivor names, so the induced map reads off directly
  mapping = {}
  for y in bottom.target.elements:
    mapping[proj_b(y)] = proj_t(right(y))
  return ASetMap(qb, qt, mapping), proj_b, proj_t


def is_distinguished_square(bottom, top, left, right):
  """Is the induced map of cokernels an isomorphism?"""
  cmp_map, _, _ = induced_cokernel_map(bottom, top, left, right)
  return cmp_map.is_isomorphism()


def _canonical_map(source, target, push):
  return ASetMap(source, target, {x: push(x) for x in source.elements})


def _legs_factor_as_iso(Q, legs, target):
  """Does the cocone factor through Q by an isomorphism?

  ``legs`` is a tuple of (corner, corner → Q, corner → target).  Every
  element of Q must be hit by some leg (true for our wedge coequalizers);
  the universal map exists iff the leg assignments agree on overlaps.
  """
  assignment = {}
  for corner, to_q, to_target in legs:
    for x in corner.elements:
      q = to_q(x)
      t = to_target(x)
      if assignment.setdefault(q, t) != t:
        return False          # cocone does not descend to Q
  if set(assignment) != set(Q.elements):
    return False              # legs do not jointly cover Q
  try:
    w = ASetMap(Q, target, assignment)
  except InvalidStructure:
    return False
  return w.is_isomorphism()


class KeyDiagram:
  """The nine objects built from two admissible subobjects of X.

  Monic side: sub12 = S1 ∩ S2 inside sub1, sub2, and their union sub_u.
  Epic side: quo1 = X/S1, quo2 = X/S2, quo12 = X/(S1∩S2), quo_u = X/(S1∪S2).
  Derived sequences: sub12 ↣ X ↠ quo12 and sub_u ↣ X ↠ quo_u.
  """

  def __init__(self, X, set1, set2):
    if not X.is_admissible_subset(set1) or not X.is_admissible_subset(set2):
      raise InvalidStructure("key diagram needs two admissible subobjects")
    self.X = X
    self.s1 = frozenset(set1)
    self.s2 = frozenset(set2)
    self.s12 = self.s1 & self.s2
    self.su = self.s1 | self.s2

    self.sub12, self.inc12 = X.sub_aset(self.s12)
    self.sub1, self.inc1 = X.sub_aset(self.s1)
    self.sub2, self.inc2 = X.sub_aset(self.s2)
    self.sub_u, self.inc_u = X.sub_aset(self.su)

    self.quo12, self.p12 = X.quotient_by(self.s12)
    self.quo1, self.p1 = X.quotient_by(self.s1)
    self.quo2, self.p2 = X.quotient_by(self.s2)
    self.quo_u, self.pu = X.quotient_by(self.su)

    # monic square legs (all literal inclusions)
    ident = lambda x: x
    self.i12_1 = _canonical_map(self.sub12, self.sub1, ident)
    self.i12_2 = _canonical_map(self.sub12, self.sub2, ident)
    self.i1_u = _canonical_map(self.sub1, self.sub_u, ident)
    self.i2_u = _canonical_map(self.sub2, self.sub_u, ident)

    # epic square legs (collapse the larger kernel)
    def collapse(dead):
      return lambda x: X.base if x in dead else x
    self.q12_1 = _canonical_map(self.quo12, self.quo1, collapse(self.s1))
    self.q12_2 = _canonical_map(self.quo12, self.quo2, collapse(self.s2))
    self.q1_u = _canonical_map(self.quo1, self.quo_u, collapse(self.su))
    self.q2_u = _canonical_map(self.quo2, self.quo_u, collapse(self.su))

    self.seq_meet = ExactSeq(self.inc12, self.p12)
    self.seq_join = ExactSeq(self.inc_u, self.pu)

  def objects(self):
    return {"X'12": self.sub12, "X'1": self.sub1, "X'2": self.sub2,
            "X'": self.sub_u, "X": self.X, "X''12": self.quo12,
            "X''1": self.quo1, "X''2": self.quo2, "X''": self.quo_u}

  def verify(self):
    """Name → bool for every checked property (all should hold).

    The subobject square is genuinely bicartesian in the ambient category:
    its pullback is the honest fiber product and its pushout the honest
    amalgam.  The quotient square is an honest pushout, but its "pullback"
    is the double-categorical one: over F1 take X = {∗,a,b} with S1 = {∗,a},
    S2 = {∗,b}; then X/(S1∩S2) has 3 elements while the fiber product of
    X/S1 → ∗ ← X/S2 has 4, so no ambient pullback property can hold.  What
    does hold — and is checked — is the kernel comparison (the square is
    distinguished in both directions) and the lattice universal property
    (a quotient X/K factors through the square iff K lies below both
    kernels iff it lies below their intersection).
    """
    out = {}

    # -- commutativity of both squares
    out["monic_square_commutes"] = all(
        self.i12_1.compose(self.i1_u)(x) == self.i12_2.compose(self.i2_u)(x)
        for x in self.sub12.elements)
    out["epic_square_commutes"] = all(
        self.q12_1.compose(self.q1_u)(x) == self.q12_2.compose(self.q2_u)(x)
        for x in self.quo12.elements)

    # -- derived sequences
    out["meet_sequence_exact"] = is_exact(self.seq_meet)
    out["join_sequence_exact"] = is_exact(self.seq_join)

    # -- monic square: genuine ambient pullback
    FP, f1, f2 = fiber_product(self.i1_u, self.i2_u)
    try:
      # the canonical map sub12 → FP is x ↦ (x, x); match via projections
      witness = {(f1(e), f2(e)): e for e in FP.elements}
      m = ASetMap(self.sub12, FP,
                  {x: witness[(x, x)] for x in self.sub12.elements})
      out["monic_square_ambient_pullback"] = m.is_isomorphism()
    except (KeyError, InvalidStructure):
      out["monic_square_ambient_pullback"] = False

    # -- monic square: genuine ambient pushout
    PO, j1, j2 = pushout_monics(self.i12_1, self.i12_2)
    out["monic_square_ambient_pushout"] = _legs_factor_as_iso(
        PO, ((self.sub1, j1, self.i1_u), (self.sub2, j2, self.i2_u)),
        self.sub_u)

    # -- lattice universal properties, quantified over every subobject of X.
    # On the monic side these say S12 is the meet and Su the join.  Read on
    # the quotient side they are exactly the cone conditions: X/K admits a
    # cone over the cospan X''1 → X'' ← X''2 iff K ≤ S1 and K ≤ S2, and it
    # factors through X''12 iff K ≤ S12; dually for cocones under the span.
    subs = self.X.subobject_sets()
    out["lattice_meet"] = all(
        (k <= self.s1 and k <= self.s2) == (k <= self.s12) for k in subs)
    out["lattice_join"] = all(
        (k >= self.s1 and k >= self.s2) == (k >= self.su) for k in subs)

    # -- epic square: genuine ambient pushout (coequalizer of the span)
    V, a1, a2 = wedge(self.quo1, self.quo2)
    left = self.q12_1.compose(a1)
    right = self.q12_2.compose(a2)
    Q, proj = coequalizer(left, right)
    legs = ((self.quo1, a1.compose(proj), self.q1_u),
            (self.quo2, a2.compose(proj), self.q2_u))
    out["epic_square_ambient_pushout"] = _legs_factor_as_iso(
        Q, legs, self.quo_u)

    # -- epic square: kernel comparison (distinguished in both directions)
    def kernel_set(pmap):
      return pmap.preimage({pmap.target.base})

    k_a = kernel_set(self.q12_1)                    # in quo12
    k_b = kernel_set(self.q2_u)                     # in quo2
    ka_obj, _ = self.quo12.sub_aset(k_a)
    kb_obj, _ = self.quo2.sub_aset(k_b)
    out["epic_square_kernel_comparison_1"] = (
        ka_obj.is_isomorphic(kb_obj)
        and all(self.q12_2(x) in k_b for x in k_a))
    k_c = kernel_set(self.q12_2)
    k_d = kernel_set(self.q1_u)
    kc_obj, _ = self.quo12.sub_aset(k_c)
    kd_obj, _ = self.quo1.sub_aset(k_d)
    out["epic_square_kernel_comparison_2"] = (
        kc_obj.is_isomorphic(kd_obj)
        and all(self.q12_1(x) in k_d for x in k_c))

    # -- the quotient by the meet embeds in the product of the quotients
    P, pr1, pr2 = product(self.quo1, self.quo2)
    pair_of = {}
    for e in P.elements:
      pair_of.setdefault((pr1(e), pr2(e)), e)
    emb = ASetMap(self.quo12, P,
                  {x: pair_of[(self.q12_1(x), self.q12_2(x))]
                   for x in self.quo12.elements})
    out["meet_quotient_embeds_in_product"] = emb.is_injective()

    return out

  def ok(self):
    return all(self.verify().values())


def key_diagram(X, seq1, seq2):
  """Build the nine-object diagram from two exact sequences into X."""
  for seq in (seq1, seq2):
    if not seq.middle.same_carrier(X):
      raise InvalidStructure("both sequences must have middle object X")
    if not is_exact(seq):
      raise InvalidStructure("key diagram needs exact input sequences")
  return KeyDiagram(X, seq1.i.image_set(), seq2.i.image_set())
