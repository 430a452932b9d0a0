import random

import pytest

from monoidkit.asets import (ASetMap, cycle_nset, hom_maps, nat_set,
                             point_aset, truncated_line)
from monoidkit.corpora import all_nsets, random_nset
from monoidkit.errors import NotIso, PredicateClosureError
from monoidkit.monoids import NatMonoid
from monoidkit.serre import (IndexPoset, QuotientHom, SerrePredicate,
                             WindowPair, canonical_window, check_condition_w,
                             check_filtered, compose_quotient, hom_quotient,
                             hom_quotient_naive, identity_quotient,
                             index_poset, is_iso_quotient, monic_representative,
                             quotient_equivalence_report, validate_serre,
                             zero_quotient)

N = NatMonoid()
TORSION = SerrePredicate.torsion(N)


# ---------------------------------------------------------------- predicates


def test_torsion_predicate_is_serre_on_small_nsets():
  report = validate_serre(TORSION, all_nsets(4))
  assert report.ok, report.violations


def test_zero_predicate_is_serre():
  report = validate_serre(SerrePredicate.zero(N), all_nsets(3))
  assert report.ok


def test_explicit_predicate_missing_a_subquotient_is_flagged():
  # the two-leaf fork has both one-leaf subobjects "in C", but is not itself
  fork = nat_set({"a": "*", "b": "*"}, name="fork")
  bad = SerrePredicate.explicit(N, [point_aset(N), truncated_line(1)])
  report = validate_serre(bad, [fork, truncated_line(1), point_aset(N)])
  assert not report.ok
  assert any("two-out-of-three" in v for v in report.violations)


def test_predicate_json_round_trip():
  for pred in (TORSION, SerrePredicate.support_in(N, ["(t)"]),
               SerrePredicate.finite_length(N),
               SerrePredicate.explicit(N, [truncated_line(1)])):
    assert SerrePredicate.from_json(N, pred.to_json()) == pred


# -------------------------------------------------------------- window poset


def test_index_poset_of_torsion_line_has_nine_windows_and_a_maximum():
  X = truncated_line(2)
  poset = index_poset(X, X, TORSION)
  assert len(poset) == 9
  top = poset.maximum()
  assert top == WindowPair({"*"}, set(X.elements))
  assert all(poset.leq(w, top) for w in poset.pairs)
  assert check_filtered(poset)


def test_generated_posets_are_filtered():
  for X in all_nsets(4):
    for Y in all_nsets(3):
      assert check_filtered(index_poset(X, Y, TORSION))


def test_artificial_antichain_is_reported_unfiltered():
  X = truncated_line(2)
  a = WindowPair({"*", "1", "t"}, {"*", "t"})
  b = WindowPair({"*", "t"}, {"*"})
  poset = IndexPoset(X, X, TORSION, [a, b])
  report = check_filtered(poset)
  assert not report
  assert set(report.witness) == {a, b}


# ------------------------------------------------------------------ hom-sets


def test_hom_through_zero_predicate_is_the_plain_hom_set():
  zero = SerrePredicate.zero(N)
  X, Y = cycle_nset(2, tail=1), truncated_line(3)
  for A, B in [(X, Y), (Y, X), (X, X)]:
    assert len(hom_quotient(A, B, zero)) == len(hom_maps(A, B))


def test_torsion_object_has_exactly_one_endomorphism_in_the_quotient():
  X = truncated_line(2)
  homs = hom_quotient(X, X, TORSION)
  assert len(homs) == 1
  assert homs[0].is_zero()
  # and the zero map is the identity here: X is killed by the quotient
  assert homs[0] == identity_quotient(X, TORSION)
  assert is_iso_quotient(homs[0])


def test_hom_sets_match_the_all_window_colimit_count():
  sets = all_nsets(4)
  for X in sets:
    for Y in sets:
      assert len(hom_quotient(X, Y, TORSION)) == \
          hom_quotient_naive(X, Y, TORSION)


def test_ambient_maps_equal_in_quotient_iff_equal_on_canonical_window():
  C = cycle_nset(2, tail=1)           # a0 feeds a 2-cycle
  ident = {x: x for x in C.elements}
  shifted = dict(ident, a0="c1")      # agrees with id on the periodic part
  f = ASetMap(C, C, ident)
  g = ASetMap(C, C, shifted)
  assert f != g
  assert QuotientHom.from_ambient(f, TORSION) == \
      QuotientHom.from_ambient(g, TORSION)


# --------------------------------------------------------------- composition


def test_identity_and_zero_laws():
  X, Y = cycle_nset(3), cycle_nset(2, tail=2)
  for f in hom_quotient(X, Y, TORSION):
    assert compose_quotient(identity_quotient(X, TORSION), f) == f
    assert compose_quotient(f, identity_quotient(Y, TORSION)) == f
    z = compose_quotient(f, zero_quotient(Y, X, TORSION))
    assert z == zero_quotient(X, X, TORSION)


def test_randomized_category_laws():
  rng = random.Random(20240817)
  rounds = 0
  while rounds < 60:
    X, Y, Z = (random_nset(rng, 5) for _ in range(3))
    fs = hom_quotient(X, Y, TORSION)
    gs = hom_quotient(Y, Z, TORSION)
    hs = hom_quotient(Z, X, TORSION)
    if not (fs and gs and hs):
      continue
    f, g, h = rng.choice(fs), rng.choice(gs), rng.choice(hs)
    assert compose_quotient(compose_quotient(f, g), h) == \
        compose_quotient(f, compose_quotient(g, h))
    rounds += 1


def test_quotient_functor_preserves_composition():
  X = cycle_nset(2, tail=1)
  Y = truncated_line(3)
  for u in hom_maps(X, X):
    for v in hom_maps(X, Y):
      lhs = QuotientHom.from_ambient(u.compose(v), TORSION)
      rhs = compose_quotient(QuotientHom.from_ambient(u, TORSION),
                             QuotientHom.from_ambient(v, TORSION))
      assert lhs == rhs


def test_non_serre_predicate_raises_closure_error():
  fork = nat_set({"a": "*", "b": "*"})
  bad = SerrePredicate.explicit(N, [point_aset(N), truncated_line(1)])
  with pytest.raises(PredicateClosureError):
    hom_quotient(fork, fork, bad)


# ------------------------------------------------------------ isos and monos


def test_dense_inclusion_is_an_iso_and_has_a_split_monic_representative():
  C = cycle_nset(2, tail=1)
  periodic = {"*", "c0", "c1"}
  sub, incl = C.sub_aset(periodic)
  f = QuotientHom.from_ambient(incl, TORSION)
  assert is_iso_quotient(f)
  m = monic_representative(f)
  assert m.is_injective()
  # the witness is split by an honest retraction, hence monic in M/C
  assert any(all(p(m(x)) == x for x in m.source.elements)
             for p in hom_maps(m.target, m.source))


def test_collapse_of_torsion_kernel_is_an_iso():
  C = cycle_nset(2, tail=1)
  T = {"*"} | {x for x in C.nonbase() if x.startswith("a")} - {"a0"}
  # collapsing nothing but the basepoint is trivially iso
  quo, proj = C.quotient_by(frozenset({"*"}))
  assert is_iso_quotient(QuotientHom.from_ambient(proj, TORSION))


def test_non_iso_raises_not_iso():
  X = cycle_nset(2)
  f = zero_quotient(X, X, TORSION)
  assert not is_iso_quotient(f)
  with pytest.raises(NotIso):
    monic_representative(f)


def test_canonical_window_of_mixed_object():
  C = cycle_nset(2, tail=1)
  w = canonical_window(C, C, TORSION)
  assert w.xsub == frozenset({"*", "c0", "c1"})   # the periodic part
  assert w.ykernel == frozenset({"*"})            # no torsion to kill


# --------------------------------------------------------------- condition W


@pytest.mark.parametrize("V", [truncated_line(2), cycle_nset(2, tail=1),
                               cycle_nset(3)])
def test_condition_w_holds_for_torsion(V):
  assert check_condition_w(V, TORSION) is True


def test_condition_w_with_zero_predicate_is_trivial():
  assert check_condition_w(truncated_line(2), SerrePredicate.zero(N)) is True


# ----------------------------------------------- quotient versus localization


def test_equivalence_report_inverting_t():
  report = quotient_equivalence_report(N, ["(t)"], corpus=all_nsets(4))
  assert len(report.rows) >= 20
  assert report.ok, str(report)


def test_equivalence_report_empty_z_is_the_identity_functor():
  report = quotient_equivalence_report(N, [], corpus=all_nsets(3))
  assert report.ok
  js = report.to_json()
  assert js["mismatches"] == 0 and js["pairs"] == len(report.rows)
