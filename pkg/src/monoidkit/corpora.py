"""Corpora of small A-sets: exhaustive enumeration up to iso, plus samplers.

The exhaustive enumerators are structural — they generate one canonical
representative per isomorphism class instead of deduplicating raw tables:

* An ℕ-set is a pointed successor graph, i.e. a rooted forest hanging on ∗
  together with a multiset of "crowns" (directed cycles with trees attached).
  Classes are enumerated as shape data (`NShape`) so the generator itself
  knows which ones are rooted trees — an oracle independent of anything the
  library computes from the table.
* A Γ₊-set for a finite abelian group Γ is forced to be a Γ-permutation set
  with a disjoint basepoint (g·x = ∗ would give x = g⁻¹·∗ = ∗), so classes
  are multisets of coset orbits Γ/H; the stabilizers come out for free.
* A set over ℕ/(tᴺ) is a successor forest of height ≤ N.

`brute_force_asets` really does enumerate raw action tables and deduplicate;
it exists to cross-check the structural generators on small sizes.
"""

from __future__ import annotations

import itertools
import random

from .asets import STAR, FiniteASet, nat_set
from .errors import ClosureBoundExceeded, InvalidStructure
from .monoids import FiniteMonoid, NatMonoid

# --------------------------------------------------------------- tree shapes
#
# A rooted-tree shape is a sorted tuple of child shapes; the leaf is ().
# Nested tuples compare recursively, so plain sorted() canonicalizes.

_tree_cache = {}
_forest_cache = {}


def tree_shapes(n):
  """All rooted trees on n nodes, as canonical shapes."""
  if n < 1:
    return ()
  if n not in _tree_cache:
    _tree_cache[n] = tuple(forest_multisets(n - 1))
  return _tree_cache[n]


def forest_multisets(total):
  """All multisets of tree shapes with `total` nodes, as sorted tuples."""
  if total not in _forest_cache:
    found = []

    def extend(remaining, prefix, floor):
      if remaining == 0:
        found.append(tuple(prefix))
        return
      for size in range(1, remaining + 1):
        for shape in tree_shapes(size):
          if floor is not None and (size, shape) < floor:
            continue
          prefix.append(shape)
          extend(remaining - size, prefix, (size, shape))
          prefix.pop()

    extend(total, [], None)
    _forest_cache[total] = tuple(found)
  return _forest_cache[total]


def shape_size(shape):
  return 1 + sum(shape_size(c) for c in shape)


def shape_height(shape):
  return 1 + max((shape_height(c) for c in shape), default=0)


def _shape_tuples(slots, total):
  """Ordered `slots`-tuples of tree shapes whose sizes sum to `total`."""
  if slots == 0:
    if total == 0:
      yield ()
    return
  for size in range(1, total - slots + 2):
    for shape in tree_shapes(size):
      for rest in _shape_tuples(slots - 1, total - size):
        yield (shape,) + rest


def crown_shapes(total):
  """Cycles of length k with a tree hanging at each node, `total` nodes.

  A crown is a k-tuple of tree shapes (the cycle node is each tree's root),
  canonical up to rotation (functional-graph cycles are directed, so no
  reflections).
  """
  out = set()
  for k in range(1, total + 1):
    for shapes in _shape_tuples(k, total):
      out.add(min(shapes[i:] + shapes[:i] for i in range(k)))
  return tuple(sorted(out))


class NShape:
  """Isomorphism class of a finite ℕ-set: forest on ∗ plus crowns."""

  __slots__ = ("forest", "crowns")

  def __init__(self, forest=(), crowns=()):
    self.forest = tuple(forest)
    self.crowns = tuple(crowns)

  def nonbase_size(self):
    return (sum(shape_size(s) for s in self.forest)
            + sum(shape_size(s) for c in self.crowns for s in c))

  def is_tree(self):
    """True iff every element eventually falls into ∗ (no cycles)."""
    return not self.crowns

  def height(self):
    return max((shape_height(s) for s in self.forest), default=0)

  def to_aset(self):
    succ = {}
    counter = itertools.count(1)

    def place_tree(shape, parent):
      me = f"x{next(counter)}"
      succ[me] = parent
      for child in shape:
        place_tree(child, me)

    for shape in self.forest:
      place_tree(shape, STAR)
    for crown in self.crowns:
      nodes = [f"x{next(counter)}" for _ in crown]
      for i, shape in enumerate(crown):
        succ[nodes[i]] = nodes[(i + 1) % len(nodes)]
        for child in shape:
          place_tree(child, nodes[i])
    return nat_set(succ, name=repr(self))

  def __eq__(self, other):
    return (isinstance(other, NShape)
            and (self.forest, self.crowns) == (other.forest, other.crowns))

  def __hash__(self):
    return hash((self.forest, self.crowns))

  def __repr__(self):
    return f"NShape(forest={self.forest}, crowns={self.crowns})"


def _crown_multisets(total):
  if total == 0:
    return [()]
  out = []

  def extend(remaining, prefix, floor):
    if remaining == 0:
      out.append(tuple(prefix))
      return
    for size in range(1, remaining + 1):
      for crown in crown_shapes(size):
        if floor is not None and (size, crown) < floor:
          continue
        prefix.append(crown)
        extend(remaining - size, prefix, (size, crown))
        prefix.pop()

  extend(total, [], None)
  return out


def all_nshapes(max_elements):
  """Every ℕ-set class with carrier (incl. ∗) of at most `max_elements`."""
  shapes = []
  for m in range(max_elements):
    for forest_part in range(m + 1):
      for forest in forest_multisets(forest_part):
        for crowns in _crown_multisets(m - forest_part):
          shapes.append(NShape(forest, crowns))
  return shapes


def all_nsets(max_elements):
  return [s.to_aset() for s in all_nshapes(max_elements)]


# --------------------------------------------------- sets over other monoids


def all_pointed_sets(monoid, max_elements):
  """All sets over a monoid with no proper generators (e.g. 𝔽₁): one per size."""
  if monoid.generators():
    raise InvalidStructure(f"{monoid.name} has generators; use a real enumerator")
  out = []
  for m in range(max_elements):
    elements = [STAR] + [f"x{i}" for i in range(1, m + 1)]
    out.append(FiniteASet(monoid, elements, {}, STAR, name=f"{m + 1} points"))
  return out


def nilpotency_index(monoid, gen):
  power = gen
  for k in range(1, len(monoid.elements) + 1):
    if power == monoid.zero:
      return k
    power = monoid.mul(power, gen)
  return None


def all_nilpotent_asets(monoid, max_elements):
  """All sets over ⟨t | tᴺ = ∗⟩: successor forests of height ≤ N."""
  gens = monoid.generators()
  if len(gens) != 1:
    raise InvalidStructure("expected a single-generator monoid")
  t = gens[0]
  bound = nilpotency_index(monoid, t)
  if bound is None:
    raise InvalidStructure(f"generator {t!r} of {monoid.name} is not nilpotent")
  out = []
  for m in range(max_elements):
    for forest in forest_multisets(m):
      if max((shape_height(s) for s in forest), default=0) > bound:
        continue
      line = NShape(forest).to_aset()
      action = {t: dict(line.action["t"])}
      out.append(FiniteASet(monoid, list(line.elements), action, STAR,
                            name=line.name))
  return out


def unit_subgroups(monoid):
  """All subgroups of the unit group, as frozensets of monoid elements."""
  units = frozenset(monoid.unit_elements())

  def span(gens):
    seen = {monoid.one}
    frontier = [monoid.one]
    while frontier:
      x = frontier.pop()
      for g in gens:
        y = monoid.mul(x, g)
        if y not in seen:
          seen.add(y)
          frontier.append(y)
    return frozenset(seen)

  found = {span([])}
  frontier = [span([])]
  while frontier:
    H = frontier.pop()
    for g in units:
      if g not in H:
        K = span(list(H) + [g])
        if K not in found:
          found.add(K)
          frontier.append(K)
  return sorted(found, key=lambda H: (len(H), sorted(H)))


def coset_orbit_aset(monoid, subgroup, tag=""):
  """The Γ₊-set of cosets Γ/H (plus basepoint) for a subgroup H of the units."""
  units = monoid.unit_elements()
  cosets = {}
  for u in units:
    c = frozenset(monoid.mul(u, h) for h in subgroup)
    cosets.setdefault(c, f"{tag}[{min(sorted(c))}]")
  action = {}
  for g in monoid.generators():
    action[g] = {name: cosets[frozenset(monoid.mul(g, x) for x in c)]
                 for c, name in cosets.items()}
  elements = [STAR] + sorted(cosets.values())
  return FiniteASet(monoid, elements, action, STAR,
                    name=f"orbit of index {len(cosets)}")


def all_gamma_asets(monoid, max_elements):
  """Every Γ₊-set class with ≤ max_elements carrier; with stabilizer orders.

  Returns (aset, stabilizer_orders) pairs, one per class: a Γ₊-set is a
  Γ-permutation set with basepoint, so a class is a multiset of coset
  orbits; `stabilizer_orders` lists |H| per orbit (all 1 ⟺ free).
  """
  subgroups = unit_subgroups(monoid)
  n_units = len(monoid.unit_elements())
  sizes = [n_units // len(H) for H in subgroups]
  out = []

  def assemble(chosen):
    if not chosen:
      elements = [STAR]
      action = {g: {} for g in monoid.generators()}
      return FiniteASet(monoid, elements, action, STAR, name="point")
    parts = [coset_orbit_aset(monoid, subgroups[i], tag=f"o{k}")
             for k, i in enumerate(chosen)]
    elements = [STAR]
    action = {g: {} for g in monoid.generators()}
    for part in parts:
      elements += list(part.nonbase())
      for g, gmap in part.action.items():
        action[g].update({x: y for x, y in gmap.items() if x != STAR})
    return FiniteASet(monoid, elements, action, STAR,
                      name=f"{len(parts)} orbit(s)")

  def extend(budget, start, chosen):
    out.append((assemble(chosen),
                tuple(len(subgroups[i]) for i in chosen)))
    for i in range(start, len(subgroups)):
      if sizes[i] <= budget:
        extend(budget - sizes[i], i, chosen + [i])

  extend(max_elements - 1, 0, [])
  return out


def brute_force_asets(monoid, max_elements):
  """Raw enumeration of all action tables, deduplicated up to iso.

  Exponential in carrier size and generator count — this is the oracle the
  structural enumerators are checked against, not a production path.
  """
  gens = (["t"] if isinstance(monoid, NatMonoid) else monoid.generators())
  out = []
  for m in range(max_elements):
    carrier = [f"x{i}" for i in range(1, m + 1)]
    targets = carrier + [STAR]
    candidates = []
    for assignment in itertools.product(
        itertools.product(targets, repeat=m), repeat=len(gens)):
      action = {g: dict(zip(carrier, images))
                for g, images in zip(gens, assignment)}
      try:
        X = FiniteASet(monoid, [STAR] + carrier, action, STAR)
      except InvalidStructure:
        continue
      if X.validate().ok:
        candidates.append(X)
    out.extend(dedup_up_to_iso(candidates))
  return out


def _fingerprint(X):
  gens = sorted(X.action)
  local = []
  for x in X.nonbase():
    row = []
    for g in gens:
      y = X.action[g].get(x, STAR)
      row.append("*" if y == STAR else ("fix" if y == x else "move"))
    indeg = sum(1 for g in gens for z in X.nonbase()
                if X.action[g].get(z, STAR) == x)
    local.append((tuple(row), indeg))
  return (X.size(), tuple(sorted(local)))


def dedup_up_to_iso(asets):
  buckets = {}
  for X in asets:
    buckets.setdefault(_fingerprint(X), []).append(X)
  out = []
  for group in buckets.values():
    reps = []
    for X in group:
      if not any(X.is_isomorphic(R) for R in reps):
        reps.append(X)
    out.extend(reps)
  return out


def close_under_subquotients(seeds, bound=64):
  """Representatives of the sub/quotient closure of `seeds`, up to iso.

  Raises ClosureBoundExceeded when the class count passes `bound`.
  """
  reps = []
  buckets = {}

  def add(X):
    key = _fingerprint(X)
    for R in buckets.get(key, []):
      if X.is_isomorphic(R):
        return None
    if len(reps) >= bound:
      raise ClosureBoundExceeded(
          f"subquotient closure exceeded {bound} classes")
    reps.append(X)
    buckets.setdefault(key, []).append(X)
    return X

  work = [X for X in seeds if add(X) is not None]
  while work:
    X = work.pop()
    for s in X.subobject_sets():
      sub, _ = X.sub_aset(s)
      quo, _ = X.quotient_by(s)
      for Y in (sub, quo):
        fresh = add(Y)
        if fresh is not None:
          work.append(fresh)
  return reps


# ------------------------------------------------------------------ samplers


def random_nset(rng, max_nonbase):
  """A uniformly messy successor map on a random carrier size."""
  m = rng.randint(0, max_nonbase)
  carrier = [f"x{i}" for i in range(1, m + 1)]
  succ = {x: rng.choice(carrier + [STAR]) for x in carrier}
  return nat_set(succ)


def random_gamma_aset(rng, monoid, max_nonbase):
  subgroups = unit_subgroups(monoid)
  n_units = len(monoid.unit_elements())
  chosen = []
  budget = rng.randint(0, max_nonbase)
  while True:
    fits = [i for i, H in enumerate(subgroups) if n_units // len(H) <= budget]
    if not fits:
      break
    i = rng.choice(fits)
    chosen.append(i)
    budget -= n_units // len(subgroups[i])
  parts = [coset_orbit_aset(monoid, subgroups[i], tag=f"o{k}")
           for k, i in enumerate(chosen)]
  elements = [STAR]
  action = {g: {} for g in monoid.generators()}
  for part in parts:
    elements += list(part.nonbase())
    for g, gmap in part.action.items():
      action[g].update({x: y for x, y in gmap.items() if x != STAR})
  return FiniteASet(monoid, elements, action, STAR)


def random_aset(rng, monoid, max_nonbase, attempts=200):
  """A random A-set over any supported monoid (rejection sampling fallback)."""
  if isinstance(monoid, NatMonoid):
    return random_nset(rng, max_nonbase)
  if set(monoid.unit_elements()) == set(monoid.elements) - {monoid.zero}:
    return random_gamma_aset(rng, monoid, max_nonbase)
  gens = monoid.generators()
  for _ in range(attempts):
    m = rng.randint(0, max_nonbase)
    carrier = [f"x{i}" for i in range(1, m + 1)]
    action = {g: {x: rng.choice(carrier + [STAR]) for x in carrier}
              for g in gens}
    try:
      X = FiniteASet(monoid, [STAR] + carrier, action, STAR)
    except InvalidStructure:
      continue
    if X.validate().ok:
      return X
  raise InvalidStructure(
      f"no valid random action on {monoid.name} found in {attempts} attempts")
