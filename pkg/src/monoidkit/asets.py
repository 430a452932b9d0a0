"""Finite pointed sets with a monoid action, and their quasi-exact category.

Objects carry the action on a generating set only; everything else is
recovered (and checked) by closing the generator maps inside the full
transformation monoid of the carrier.  Morphisms are basepoint- and
action-preserving maps.  Exact sequences are injection/surjection pairs where
the surjection collapses exactly the image and nothing else.

The category is not abelian, but images, kernels, cokernels, fiber products,
pushouts along monics and coequalizers all exist on finite carriers and are
constructed here explicitly.
"""

from __future__ import annotations

import itertools
import math

from .errors import InvalidStructure, Undecidable
from .monoids import STAR, FiniteMonoid, NatMonoid


class FiniteASet:
  """A finite pointed set with an action of a pointed monoid.

  ``action`` maps generator names to element maps; entries on the basepoint
  may be omitted (they are forced).  Over ``NatMonoid`` the single key is
  ``"t"`` and the object is just a pointed set with a successor map.
  """

  def __init__(self, monoid, elements, action, base=STAR, name=None):
    self.monoid = monoid
    self.elements = list(elements)
    self.base = base
    self.name = name
    if len(set(self.elements)) != len(self.elements):
      raise InvalidStructure("duplicate elements in carrier")
    if base not in self.elements:
      raise InvalidStructure("basepoint missing from carrier")
    self._element_set = set(self.elements)
    self.action = {}
    for gen, mapping in action.items():
      full = dict(mapping)
      full.setdefault(base, base)
      for x, y in full.items():
        if x not in self._element_set or y not in self._element_set:
          raise InvalidStructure(f"action of {gen!r} mentions unknown element")
      missing = self._element_set - set(full)
      if missing:
        raise InvalidStructure(f"action of {gen!r} is not total: missing {sorted(missing)}")
      if full[base] != base:
        raise InvalidStructure(f"action of {gen!r} moves the basepoint")
      self.action[gen] = full
    if isinstance(monoid, NatMonoid):
      if set(self.action) != {"t"}:
        raise InvalidStructure("an N-set needs exactly the successor map 't'")
    else:
      known = set(monoid.elements)
      for gen in self.action:
        if gen not in known:
          raise InvalidStructure(f"action key {gen!r} is not a monoid element")
    self._full_action_cache = None

  # -- basic structure ---------------------------------------------------------

  def size(self):
    return len(self.elements)

  def nonbase(self):
    return [x for x in self.elements if x != self.base]

  def generator_maps(self):
    """Action maps for a generating set, as plain dicts."""
    return self.action

  def is_trivial(self):
    return len(self.elements) == 1

  def full_action(self):
    """Action map for every monoid element (finite acting monoid only).

    Built by closing the given generator maps under multiplication; a
    conflict between two factorizations of the same monoid element means the
    input did not respect the monoid relations.
    """
    if isinstance(self.monoid, NatMonoid):
      raise InvalidStructure("full action tables exist over finite monoids only")
    if self._full_action_cache is not None:
      return self._full_action_cache
    m = self.monoid
    ident = {x: x for x in self.elements}
    # the unit and zero actions are forced; a conflicting closure product
    # still trips the consistency check below
    table = {m.one: ident, m.zero: {x: self.base for x in self.elements}}
    for gen, gmap in self.action.items():
      if gen in table and table[gen] != gmap:
        raise InvalidStructure(f"action of {gen!r} conflicts with the unit law")
      table[gen] = dict(gmap)
    frontier = list(table)
    while frontier:
      a = frontier.pop()
      for gen, gmap in self.action.items():
        b = m.mul(a, gen)
        composed = {x: gmap[table[a][x]] for x in self.elements}
        if b in table:
          if table[b] != composed:
            raise InvalidStructure(
                f"action is inconsistent: element {b!r} gets two different maps")
        else:
          table[b] = composed
          frontier.append(b)
    missing = set(m.elements) - set(table)
    if missing:
      raise InvalidStructure(
          f"action keys do not generate the monoid (missing {sorted(missing)})")
    const = {x: self.base for x in self.elements}
    if table[m.zero] != const:
      raise InvalidStructure("the monoid zero does not act as the basepoint map")
    self._full_action_cache = table
    return table

  def validate(self):
    from .monoids import ValidationReport
    v = []
    try:
      if not isinstance(self.monoid, NatMonoid):
        self.full_action()
    except InvalidStructure as e:
      v.append(str(e))
    return ValidationReport(self.name or "A-set", v)

  def act(self, a, x):
    """a . x for a monoid element a (over N, a is the exponent of t)."""
    if isinstance(self.monoid, NatMonoid):
      step = self.action["t"]
      for _ in range(a):
        x = step[x]
      return x
    return self.full_action()[a][x]

  def orbit(self, x):
    """The cyclic subobject generated by x (always action-closed)."""
    out = {self.base, x}
    frontier = [x]
    while frontier:
      y = frontier.pop()
      for gmap in self.action.values():
        z = gmap[y]
        if z not in out:
          out.add(z)
          frontier.append(z)
    return frozenset(out)

  # -- subobjects and quotients --------------------------------------------------

  def is_admissible_subset(self, subset):
    s = set(subset)
    if self.base not in s or not s <= self._element_set:
      return False
    return all(gmap[x] in s for x in s for gmap in self.action.values())

  def subobject_sets(self):
    """Every action-closed subset containing the basepoint, as frozensets."""
    rest = self.nonbase()
    out = []
    for r in range(len(rest) + 1):
      for combo in itertools.combinations(rest, r):
        cand = frozenset(combo) | {self.base}
        if self.is_admissible_subset(cand):
          out.append(cand)
    return out

  def sub_aset(self, subset, name=None):
    """(subobject, inclusion) for an action-closed subset."""
    if not self.is_admissible_subset(subset):
      raise InvalidStructure("subset is not action-closed (or misses the basepoint)")
    keep = [x for x in self.elements if x in set(subset)]
    action = {g: {x: gmap[x] for x in keep} for g, gmap in self.action.items()}
    sub = FiniteASet(self.monoid, keep, action, self.base, name=name)
    incl = ASetMap(sub, self, {x: x for x in keep})
    return sub, incl

  def quotient_by(self, subset, name=None):
    """(quotient, projection) collapsing an admissible subset to the basepoint.

    Surviving elements keep their names.
    """
    if not self.is_admissible_subset(subset):
      raise InvalidStructure("can only collapse an action-closed subset")
    dead = set(subset) - {self.base}
    keep = [x for x in self.elements if x not in dead]
    def push(y):
      return self.base if y in dead else y
    action = {g: {x: push(gmap[x]) for x in keep} for g, gmap in self.action.items()}
    quo = FiniteASet(self.monoid, keep, action, self.base, name=name)
    proj = ASetMap(self, quo, {x: push(x) for x in self.elements})
    return quo, proj

  # -- comparisons ------------------------------------------------------------------

  def same_carrier(self, other):
    return (self.monoid == other.monoid and self.base == other.base
            and self._element_set == other._element_set
            and self.action == other.action)

  def find_isomorphism(self, other):
    """A basepoint/action-preserving bijection self → other, or None."""
    if self.monoid != other.monoid or self.size() != other.size():
      return None

    def profile(aset, x):
      hits = sum(1 for g in aset.action.values() for y in aset.elements
                 if g[y] == x)
      img = tuple(sorted(str(g[x]) == str(aset.base) for g in aset.action.values()))
      return (hits, img, len(aset.orbit(x)))

    mine = self.nonbase()
    theirs = other.nonbase()
    if sorted(profile(self, x) for x in mine) != \
       sorted(profile(other, y) for y in theirs):
      return None
    gens = list(self.action)
    if set(gens) != set(other.action):
      return None

    assignment = {self.base: other.base}
    used = {other.base}

    def ok(x, y):
      # partial equivariance: wherever the image of g·x is already decided,
      # it must match g·y
      for g in gens:
        gx = self.action[g][x]
        if gx in assignment and assignment[gx] != other.action[g][y]:
          return False
      return True

    def backtrack(i):
      if i == len(mine):
        # final full equivariance check
        for g in gens:
          for x in self.elements:
            if assignment[self.action[g][x]] != other.action[g][assignment[x]]:
              return False
        return True
      x = mine[i]
      for y in theirs:
        if y in used or profile(self, x) != profile(other, y):
          continue
        assignment[x] = y
        used.add(y)
        if ok(x, y) and backtrack(i + 1):
          return True
        del assignment[x]
        used.discard(y)
      return False

    if backtrack(0):
      return dict(assignment)
    return None

  def is_isomorphic(self, other):
    return self.find_isomorphism(other) is not None

  def __repr__(self):
    label = self.name or f"{len(self.elements)} elements"
    return f"FiniteASet({label})"


class ASetMap:
  """A morphism of pointed A-sets: basepoint- and action-preserving."""

  def __init__(self, source, target, mapping):
    self.source = source
    self.target = target
    self.mapping = dict(mapping)
    if set(self.mapping) != source._element_set:
      raise InvalidStructure("map must be defined on exactly the source carrier")
    for x, y in self.mapping.items():
      if y not in target._element_set:
        raise InvalidStructure(f"map sends {x!r} outside the target")
    if self.mapping[source.base] != target.base:
      raise InvalidStructure("map does not preserve the basepoint")
    if set(source.action) != set(target.action):
      raise InvalidStructure("source and target use different acting generators")
    for g, gmap in source.action.items():
      tmap = target.action[g]
      for x in source.elements:
        if self.mapping[gmap[x]] != tmap[self.mapping[x]]:
          raise InvalidStructure(
              f"map is not equivariant at generator {g!r}, element {x!r}")

  def __call__(self, x):
    return self.mapping[x]

  def is_injective(self):
    vals = list(self.mapping.values())
    return len(set(vals)) == len(vals)

  def is_surjective(self):
    return set(self.mapping.values()) == self.target._element_set

  def is_isomorphism(self):
    return self.is_injective() and self.is_surjective()

  def image_set(self):
    return frozenset(self.mapping.values())

  def preimage(self, subset):
    s = set(subset)
    return frozenset(x for x, y in self.mapping.items() if y in s)

  def compose(self, then):
    """self followed by then (diagrammatic order)."""
    if not self.target.same_carrier(then.source):
      raise InvalidStructure("maps are not composable")
    return ASetMap(self.source, then.target,
                   {x: then.mapping[y] for x, y in self.mapping.items()})

  def __eq__(self, other):
    return (isinstance(other, ASetMap)
            and self.source.same_carrier(other.source)
            and self.target.same_carrier(other.target)
            and self.mapping == other.mapping)

  def __hash__(self):
    return hash(frozenset(self.mapping.items()))

  def __repr__(self):
    return f"ASetMap({self.source!r} -> {self.target!r})"


def identity_map(X):
  return ASetMap(X, X, {x: x for x in X.elements})


class ExactSeq:
  """X' >--i--> X --p-->> X'': an admissible monic and its cokernel."""

  def __init__(self, i, p):
    if not i.target.same_carrier(p.source):
      raise InvalidStructure("the two maps must share the middle object")
    self.i = i
    self.p = p

  @property
  def sub(self):
    return self.i.source

  @property
  def middle(self):
    return self.i.target

  @property
  def quotient(self):
    return self.p.target

  def __repr__(self):
    return f"ExactSeq({self.sub!r} -> {self.middle!r} -> {self.quotient!r})"


def is_exact(seq):
  """Is p literally a cokernel of i and i a kernel of p?

  Requires i injective, p surjective, the fiber of p over the basepoint to be
  exactly the image of i, and every other fiber to be a single point.
  """
  i, p = seq.i, seq.p
  if not i.is_injective() or not p.is_surjective():
    return False
  image = i.image_set()
  base_fiber = p.preimage({p.target.base})
  if base_fiber != image:
    return False
  outside = [x for x in p.source.elements if x not in image]
  vals = [p(x) for x in outside]
  return len(set(vals)) == len(vals)


def kernel(p):
  """(kernel object, inclusion): the fiber of p over the basepoint."""
  sub, incl = p.source.sub_aset(p.preimage({p.target.base}))
  return incl


def cokernel(i):
  """(cokernel object, projection): the target with the image collapsed."""
  quo, proj = i.target.quotient_by(i.image_set())
  return proj


def image_factorization(f):
  """f = mono ∘ epi through the image subobject of the target."""
  img, incl = f.target.sub_aset(f.image_set())
  epi = ASetMap(f.source, img, dict(f.mapping))
  return epi, incl


def exact_seq_from_sub(X, subset):
  """The canonical sequence S >--> X -->> X/S for an admissible subset."""
  sub, incl = X.sub_aset(subset)
  quo, proj = X.quotient_by(subset)
  return ExactSeq(incl, proj)


# -- constructions ------------------------------------------------------------------


def _fresh_names(first, second, base):
  """Resolve name clashes between two carriers (keeps names when disjoint)."""
  lhs = [x for x in first if x != base]
  rhs = [x for x in second if x != base]
  clash = set(lhs) & set(rhs)
  if not clash:
    return {x: x for x in lhs}, {x: x for x in rhs}
  return ({x: f"{x}#1" for x in lhs}, {x: f"{x}#2" for x in rhs})


def wedge(X, Y, name=None):
  """(X ∨ Y, inclusion of X, inclusion of Y): disjoint union glued at ∗."""
  if X.monoid != Y.monoid:
    raise InvalidStructure("wedge needs a common acting monoid")
  ren_x, ren_y = _fresh_names(X.elements, Y.elements, X.base)
  elements = [X.base] + [ren_x[x] for x in X.nonbase()] + [ren_y[y] for y in Y.nonbase()]
  action = {}
  for g in X.action:
    gx, gy = X.action[g], Y.action[g]
    m = {X.base: X.base}
    for x in X.nonbase():
      t = gx[x]
      m[ren_x[x]] = X.base if t == X.base else ren_x[t]
    for y in Y.nonbase():
      t = gy[y]
      m[ren_y[y]] = X.base if t == Y.base else ren_y[t]
    action[g] = m
  W = FiniteASet(X.monoid, elements, action, X.base, name=name)
  inc_x = ASetMap(X, W, {**{X.base: X.base}, **ren_x})
  inc_y = ASetMap(Y, W, {**{Y.base: X.base}, **ren_y})
  return W, inc_x, inc_y


def wedge_list(sets, name=None):
  if not sets:
    raise InvalidStructure("empty wedge needs an explicit basepoint object")
  acc = sets[0]
  for nxt in sets[1:]:
    acc, _, _ = wedge(acc, nxt)
  if name:
    acc.name = name
  return acc


def point_aset(monoid, base=STAR):
  action = {g: {} for g in (["t"] if isinstance(monoid, NatMonoid)
                             else monoid.generators())}
  return FiniteASet(monoid, [base], action, base, name="point")


def free_aset(monoid, rank=1, name=None):
  """A wedge of ``rank`` copies of the acting monoid itself (finite only)."""
  if isinstance(monoid, NatMonoid):
    raise InvalidStructure("the free N-set is infinite")
  copies = []
  for k in range(rank):
    tag = "" if rank == 1 else f"@{k}"
    rename = {a: f"{a}{tag}" for a in monoid.elements}
    rename[monoid.zero] = STAR
    elements = [rename[a] for a in monoid.elements]
    action = {g: {rename[a]: rename[monoid.mul(g, a)] for a in monoid.elements}
              for g in monoid.generators()}
    copies.append(FiniteASet(monoid, elements, action, STAR))
  out = wedge_list(copies) if len(copies) > 1 else copies[0]
  out.name = name or f"free rank {rank}"
  return out


def product(X, Y, name=None):
  """Cartesian product with diagonal action and basepoint pair; projections."""
  if X.monoid != Y.monoid:
    raise InvalidStructure("product needs a common acting monoid")
  pairs = [(x, y) for x in X.elements for y in Y.elements]
  label = {p: f"({p[0]},{p[1]})" for p in pairs}
  base = label[(X.base, Y.base)]
  action = {}
  for g in X.action:
    gx, gy = X.action[g], Y.action[g]
    action[g] = {label[(x, y)]: label[(gx[x], gy[y])] for (x, y) in pairs}
  P = FiniteASet(X.monoid, [label[p] for p in pairs], action, base, name=name)
  # the pointed product keeps its projections, though they are not pointed-set
  # sections; both are equivariant
  proj_x = ASetMap(P, X, {label[(x, y)]: x for (x, y) in pairs})
  proj_y = ASetMap(P, Y, {label[(x, y)]: y for (x, y) in pairs})
  return P, proj_x, proj_y


class _UnionFind:
  def __init__(self, items):
    self.parent = {x: x for x in items}

  def find(self, x):
    while self.parent[x] != x:
      self.parent[x] = self.parent[self.parent[x]]
      x = self.parent[x]
    return x

  def union(self, a, b):
    ra, rb = self.find(a), self.find(b)
    if ra != rb:
      self.parent[ra] = rb
      return True
    return False


def smash(X, Y, name=None):
  """X ∧_A Y: pairs modulo (a·x, y) ~ (x, a·y), pairs with a ∗ collapsed."""
  if X.monoid != Y.monoid:
    raise InvalidStructure("smash needs a common acting monoid")
  pairs = [(x, y) for x in X.nonbase() for y in Y.nonbase()]
  items = pairs + ["*base*"]
  uf = _UnionFind(items)

  def node(x, y):
    if x == X.base or y == Y.base:
      return "*base*"
    return (x, y)

  # one pass adds every elementary edge; their equivalence closure is already
  # a congruence (applying a generator to both sides of an elementary move
  # yields another elementary move)
  for (x, y) in pairs:
    for g in X.action:
      uf.union(node(X.action[g][x], y), node(x, Y.action[g][y]))
  reps = {}
  for (x, y) in pairs:
    reps.setdefault(uf.find((x, y)), []).append((x, y))
  base_root = uf.find("*base*")

  def cname(root):
    x, y = min(reps[root], key=str)
    return f"({x},{y})"

  class_names = {root: cname(root) for root in reps if root != base_root}
  elements = [STAR] + sorted(class_names.values())
  action = {}
  for g in X.action:
    gmap = {STAR: STAR}
    for root, nm in class_names.items():
      x, y = reps[root][0]
      tgt = node(X.action[g][x], y)
      r = uf.find(tgt)
      gmap[nm] = STAR if r == base_root else class_names[r]
    action[g] = gmap
  S = FiniteASet(X.monoid, elements, action, STAR, name=name)
  return S


def coequalizer(f, g):
  """(Q, proj): the genuine coequalizer of f, g : X ⇉ Y in pointed A-sets.

  Identifies f(x) ~ g(x), closes under the action (u ~ v forces a·u ~ a·v),
  and collapses the class of the basepoint.
  """
  if not f.source.same_carrier(g.source) or not f.target.same_carrier(g.target):
    raise InvalidStructure("coequalizer needs a parallel pair")
  Y = f.target
  uf = _UnionFind(Y.elements)
  for x in f.source.elements:
    uf.union(f(x), g(x))
  changed = True
  while changed:
    changed = False
    for y in Y.elements:
      for gmap in Y.action.values():
        if uf.find(gmap[y]) != uf.find(gmap[uf.find(y)]):
          changed = uf.union(gmap[y], gmap[uf.find(y)]) or changed
    # rerun until action maps descend to classes
  classes = {}
  for y in Y.elements:
    classes.setdefault(uf.find(y), []).append(y)
  base_root = uf.find(Y.base)
  names = {}
  for root, members in classes.items():
    names[root] = Y.base if root == base_root else sorted(map(str, members))[0]
  elements = [names[r] for r in classes]
  action = {}
  for g, gmap in Y.action.items():
    action[g] = {names[r]: names[uf.find(gmap[classes[r][0]])] for r in classes}
  Q = FiniteASet(Y.monoid, elements, action, Y.base)
  proj = ASetMap(Y, Q, {y: names[uf.find(y)] for y in Y.elements})
  return Q, proj


def fiber_product(f, g, name=None):
  """(P, to_source_of_f, to_source_of_g) for maps f: X→Z ← Y :g."""
  if not f.target.same_carrier(g.target):
    raise InvalidStructure("fiber product needs a common target")
  P, px, py = product(f.source, g.source, name=name)
  keep = frozenset(e for e in P.elements
                   if f(px(e)) == g(py(e)))
  sub, incl = P.sub_aset(keep)
  return sub, incl.compose(px), incl.compose(py)


def pushout_monics(i, j, name=None):
  """Pushout of X <--i-- W --j--> Y for monics, via the wedge coequalizer."""
  W = i.source
  if not j.source.same_carrier(W):
    raise InvalidStructure("pushout legs must share their source")
  V, inc_x, inc_y = wedge(i.target, j.target)
  left = i.compose(inc_x)
  right = j.compose(inc_y)
  Q, proj = coequalizer(left, right)
  if name:
    Q.name = name
  return Q, inc_x.compose(proj), inc_y.compose(proj)


def hom_maps(X, Y):
  """Every A-set map X → Y, by backtracking over images of nonbase elements.

  Intended for small carriers; the partial-equivariance prune keeps the
  search far below |Y|^|X| in practice.
  """
  if set(X.action) != set(Y.action):
    raise InvalidStructure("hom needs a common acting generator set")
  xs = X.nonbase()
  gens = list(X.action)
  out = []
  assignment = {X.base: Y.base}

  def consistent(x):
    for g in gens:
      gx = X.action[g][x]
      if gx in assignment and assignment[gx] != Y.action[g][assignment[x]]:
        return False
      for z in xs:
        if X.action[g][z] == x and z in assignment and \
           Y.action[g][assignment[z]] != assignment[x]:
          return False
    return True

  def backtrack(i):
    if i == len(xs):
      out.append(ASetMap(X, Y, dict(assignment)))
      return
    x = xs[i]
    for y in Y.elements:
      assignment[x] = y
      if consistent(x):
        backtrack(i + 1)
      del assignment[x]

  backtrack(0)
  return out


# -- structure predicates --------------------------------------------------------------


def is_pc_aset(X):
  """Partial cancellativity: a·x = b·x ≠ ∗ forces a = b.

  Over a finite monoid this is brute force on the full action table; over N
  it is loop detection (a repeat t^i x = t^j x ≠ ∗ with i < j is exactly a
  witness, and orbits repeat within |X| steps).
  """
  if isinstance(X.monoid, NatMonoid):
    step = X.action["t"]
    for x in X.nonbase():
      seen = {}
      y, k = x, 0
      while y != X.base and y not in seen:
        seen[y] = k
        y, k = step[y], k + 1
      if y != X.base:
        return False
    return True
  if isinstance(X.monoid, FiniteMonoid):
    table = X.full_action()
    elts = X.monoid.elements
    for x in X.nonbase():
      hit = {}
      for a in elts:
        y = table[a][x]
        if y == X.base:
          continue
        if y in hit and hit[y] != a:
          return False
        hit[y] = a
    return True
  raise Undecidable("pc is only decided over finite monoids and N")


def is_rooted_tree(X):
  """For an N-set: does every orbit fall into ∗ (no off-base loop)?"""
  if not isinstance(X.monoid, NatMonoid):
    raise InvalidStructure("rooted-tree shape is an N-set notion")
  step = X.action["t"]
  for x in X.nonbase():
    y = x
    for _ in range(len(X.elements) + 1):
      y = step[y]
      if y == X.base:
        break
    else:
      return False
  return True


def orbit_decomposition(X):
  """Orbits and stabilizers of a Γ₊-set: list of (orbit, stabilizer) pairs.

  The acting monoid must be a finite group with zero; units never collapse a
  nonbase element, so the nonbase part is partitioned by the group action and
  each orbit is a coset object (Γ/H)₊ for its stabilizer H.
  """
  m = X.monoid
  if not isinstance(m, FiniteMonoid) or set(m.unit_elements()) != \
     set(e for e in m.elements if e != m.zero):
    raise InvalidStructure("orbit decomposition needs a group-with-zero action")
  table = X.full_action()
  units = m.unit_elements()
  seen = set()
  out = []
  for x in X.nonbase():
    if x in seen:
      continue
    orbit = frozenset(table[u][x] for u in units)
    assert X.base not in orbit, "a unit killed a nonbase element"
    seen |= orbit
    stab = frozenset(u for u in units if table[u][x] == x)
    out.append((orbit, stab))
  return out


class NotFiniteLength:
  """Certificate that no filtration with irreducible (A^×)₊ steps exists."""

  def __init__(self, stuck_subset, blocking_extension):
    self.stuck_subset = frozenset(stuck_subset)
    self.blocking_extension = frozenset(blocking_extension)

  def __repr__(self):
    return (f"NotFiniteLength(stuck={sorted(map(str, self.stuck_subset))}, "
            f"witness={sorted(map(str, self.blocking_extension))})")


def length_filtration(X):
  """A maximal chain whose steps are irreducible, or a NotFiniteLength witness.

  Irreducible means isomorphic to (A^x)_+: each step adjoins one free orbit
  of the unit group, all of whose non-unit translates land in the previous
  stage.  Returns a list of ExactSeq (previous stage into next stage onto the
  step quotient); the length of the object is the list's length.
  """
  if isinstance(X.monoid, NatMonoid):
    units = []
    unit_count = 1
    table = None
  else:
    units = X.monoid.unit_elements()
    unit_count = len(units)
    table = X.full_action()

  def unit_orbit(x):
    if table is None:
      return frozenset({x})
    return frozenset(table[u][x] for u in units)

  def nonunit_images(x):
    if table is None:
      return {X.action["t"][x]}
    return {table[a][x] for a in X.monoid.elements
            if a not in units and a != X.monoid.one}

  target = frozenset(X.elements)
  start = frozenset({X.base})
  dead = set()

  def extend(cur):
    """DFS for a chain cur -> ... -> full carrier; returns the element order."""
    if cur == target:
      return []
    if cur in dead:
      return None
    for x in sorted(map(str, target - cur)):
      orb = unit_orbit(x)
      if orb & cur or len(orb) != unit_count:
        continue
      if not nonunit_images(x) <= cur:
        continue
      rest = extend(cur | orb)
      if rest is not None:
        return [orb] + rest
    dead.add(cur)
    return None

  chain = extend(start)
  if chain is None:
    # witness: a smallest admissible extension of a stuck stage
    stuck = start
    grow = True
    while grow:
      grow = False
      for x in sorted(map(str, target - stuck)):
        orb = unit_orbit(x)
        if not (orb & stuck) and len(orb) == unit_count and \
           nonunit_images(x) <= stuck:
          stuck = stuck | orb
          grow = True
          break
    blocking = min((s for s in X.subobject_sets() if stuck < s),
                   key=len, default=target)
    return NotFiniteLength(stuck, blocking)
  steps = []
  cur = start
  for orb in chain:
    nxt = cur | orb
    mid, _ = X.sub_aset(nxt)
    steps.append(exact_seq_from_sub(mid, cur))
    cur = nxt
  return steps


def aset_length(X):
  """Number of irreducible steps, or None if X is not finite length."""
  chain = length_filtration(X)
  if isinstance(chain, NotFiniteLength):
    return None
  return len(chain)


# -- support ------------------------------------------------------------------------


def support(X):
  """Primes where the localized set does not vanish."""
  out = []
  if isinstance(X.monoid, NatMonoid):
    step = X.action["t"]
    for p in X.monoid.primes():
      if p.label == "(t)":
        alive = len(X.elements) > 1
      else:
        # inverting t kills exactly the torsion part
        alive = not is_rooted_tree(X)
      if alive:
        out.append(p)
    return out
  table = X.full_action()
  for p in X.monoid.primes():
    comp = [a for a in X.monoid.elements if a not in p.subset]
    if any(all(table[s][x] != X.base for s in comp) for x in X.nonbase()):
      out.append(p)
  return out


def codim_support(X):
  """Minimal height in the support; math.inf for the point."""
  primes = support(X)
  if not primes:
    return math.inf
  return min(p.height for p in primes)


# -- N-set conveniences ---------------------------------------------------------------


def nat_set(successor, base=STAR, name=None):
  """An N-set from a successor map (the basepoint may be left implicit)."""
  carrier = (set(successor) | set(successor.values())) - {base}
  elements = [base] + sorted(carrier)
  return FiniteASet(NatMonoid(), elements, {"t": dict(successor)}, base, name=name)


def truncated_line(k):
  """{1, t, ..., t^(k-1), ∗} as an N-set: the path that falls off the end."""
  if k == 0:
    return nat_set({}, name="line(0)")
  names = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, k)]
  succ = {names[i]: names[i + 1] for i in range(len(names) - 1)}
  succ[names[-1]] = STAR
  return nat_set(succ, name=f"line({k})")


def cycle_nset(k, tail=0):
  """A k-cycle with an optional tail hanging off it (k >= 1)."""
  cyc = [f"c{i}" for i in range(k)]
  succ = {cyc[i]: cyc[(i + 1) % k] for i in range(k)}
  for j in range(tail):
    succ[f"a{j}"] = cyc[0] if j == 0 else f"a{j-1}"
  return nat_set(succ, name=f"cycle({k})+tail({tail})")
