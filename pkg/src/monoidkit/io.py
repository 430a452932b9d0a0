"""JSON file formats for monoids, A-sets, Serre predicates, and catspecs.

Monoid files carry a "kind" discriminator ("finite" or "affine"); finite
multiplication tables are keyed by comma-joined element pairs and may store
each unordered pair once.  A-set files reference their monoid either by a
builtin id ("N" for the free pointed monoid on t, "F1" for the two-element
one) or by a path, resolved relative to the referencing file.

Malformed input raises ParseError; input that parses but fails the algebra
raises InvalidStructure.  The distinction matters for CLI exit codes.
"""

from __future__ import annotations

import json
import os

from .affine import AffineMonoid
from .asets import FiniteASet
from .errors import InvalidStructure, ParseError
from .monoids import STAR, FiniteMonoid, NatMonoid, UnitGroupDescriptor
from .serre import SerrePredicate

BUILTIN_MONOID_IDS = ("N", "F1")


def _builtin_monoid(ref):
  if ref == "N":
    return NatMonoid()
  if ref == "F1":
    return FiniteMonoid.f1()
  return None


# ------------------------------------------------------------------- monoids


def monoid_to_json(monoid):
  """Serializable dict for a finite or affine monoid."""
  if isinstance(monoid, FiniteMonoid):
    for a in monoid.elements:
      if "," in str(a):
        raise InvalidStructure(
            f"element id {a!r} contains a comma and cannot be a table key")
    table = {}
    for i, a in enumerate(monoid.elements):
      for b in monoid.elements[i:]:
        table[f"{a},{b}"] = monoid.mul(a, b)
    data = {"kind": "finite", "elements": list(monoid.elements),
            "one": monoid.one, "zero": monoid.zero, "table": table}
    if monoid.name:
      data["name"] = monoid.name
    return data
  if isinstance(monoid, AffineMonoid):
    data = {"kind": "affine", "dim": monoid.dim,
            "generators": [list(g) for g in monoid.generators],
            "units": {"free_rank": monoid.unit_group.free_rank,
                      "torsion": list(monoid.unit_group.torsion)},
            "ideal": [list(e) for e in monoid.ideal]}
    if monoid.name:
      data["name"] = monoid.name
    return data
  raise InvalidStructure(
      f"{type(monoid).__name__} has no file form; reference it by id instead")


def monoid_from_json(data):
  if not isinstance(data, dict):
    raise ParseError("monoid file must hold a JSON object")
  kind = data.get("kind")
  if kind == "finite":
    try:
      elements = list(data["elements"])
      one, zero = data["one"], data["zero"]
      raw = data["table"]
    except KeyError as e:
      raise ParseError(f"finite monoid file is missing {e}") from None
    if not isinstance(raw, dict):
      raise ParseError("finite monoid table must be an object")
    table = {}
    for key, value in raw.items():
      parts = key.split(",")
      if len(parts) != 2:
        raise ParseError(f"table key {key!r} is not of the form 'a,b'")
      table[(parts[0], parts[1])] = value
    return FiniteMonoid(elements, one, zero, table, name=data.get("name"))
  if kind == "affine":
    try:
      dim = data["dim"]
      generators = data["generators"]
    except KeyError as e:
      raise ParseError(f"affine monoid file is missing {e}") from None
    units = data.get("units") or {}
    descriptor = UnitGroupDescriptor(units.get("free_rank", 0),
                                     units.get("torsion", ()))
    return AffineMonoid(dim, generators, units=descriptor,
                        ideal=data.get("ideal"), name=data.get("name"))
  raise ParseError(f"unknown monoid kind {kind!r}")


def load_monoid(ref, base_dir=None):
  """A monoid from a builtin id or a file path."""
  builtin = _builtin_monoid(ref)
  if builtin is not None:
    return builtin
  path = ref if base_dir is None else os.path.join(base_dir, ref)
  return monoid_from_json(_read_json(path))


def save_monoid(monoid, path):
  _write_json(monoid_to_json(monoid), path)


# -------------------------------------------------------------------- A-sets


def aset_to_json(X, monoid_ref=None):
  """Serializable dict for a finite A-set.

  ``monoid_ref`` is the string stored in the "monoid" field; over the free
  pointed monoid on one generator it defaults to the builtin id "N".
  """
  if monoid_ref is None:
    if isinstance(X.monoid, NatMonoid):
      monoid_ref = "N"
    else:
      raise InvalidStructure("a monoid reference (id or path) is required")
  action = {gen: {x: y for x, y in gmap.items() if x != X.base}
            for gen, gmap in X.action.items()}
  data = {"monoid": monoid_ref, "elements": list(X.elements),
          "base": X.base, "action": action}
  if X.name:
    data["name"] = X.name
  return data


def aset_from_json(data, monoid=None, base_dir=None):
  if not isinstance(data, dict):
    raise ParseError("A-set file must hold a JSON object")
  if monoid is None:
    try:
      monoid = load_monoid(data["monoid"], base_dir)
    except KeyError:
      raise ParseError("A-set file is missing 'monoid'") from None
  try:
    elements = list(data["elements"])
    action = data["action"]
  except KeyError as e:
    raise ParseError(f"A-set file is missing {e}") from None
  if not isinstance(action, dict) or \
      not all(isinstance(v, dict) for v in action.values()):
    raise ParseError("A-set action must map generators to element maps")
  return FiniteASet(monoid, elements, action, data.get("base", STAR),
                    name=data.get("name"))


def load_aset(path, monoid=None):
  return aset_from_json(_read_json(path), monoid=monoid,
                        base_dir=os.path.dirname(os.path.abspath(path)))


def save_aset(X, path, monoid_ref=None):
  _write_json(aset_to_json(X, monoid_ref), path)


# ---------------------------------------------------------------- predicates


def predicate_from_json(monoid, data):
  if not isinstance(data, dict) or "kind" not in data:
    raise ParseError("predicate file must hold an object with a 'kind'")
  try:
    return SerrePredicate.from_json(monoid, data)
  except (KeyError, TypeError) as e:
    raise ParseError(f"malformed predicate file: {e}") from None


def load_predicate(path, monoid):
  return predicate_from_json(monoid, _read_json(path))


# ------------------------------------------------------------------ catspecs


def load_catspec(path):
  """(monoid, objects, closure_bound) from a catspec file.

  Format: {"monoid": <id-or-path>, "objects": [<A-set object>, ...],
  "closure_bound": 64}.  Objects inherit the top-level monoid.
  """
  data = _read_json(path)
  if not isinstance(data, dict):
    raise ParseError("catspec file must hold a JSON object")
  try:
    monoid_ref = data["monoid"]
    raw_objects = data["objects"]
  except KeyError as e:
    raise ParseError(f"catspec file is missing {e}") from None
  if not isinstance(raw_objects, list):
    raise ParseError("catspec 'objects' must be a list")
  base_dir = os.path.dirname(os.path.abspath(path))
  monoid = load_monoid(monoid_ref, base_dir)
  objects = [aset_from_json(obj, monoid=monoid) for obj in raw_objects]
  bound = data.get("closure_bound", 64)
  if not isinstance(bound, int) or bound < 1:
    raise ParseError("catspec 'closure_bound' must be a positive integer")
  return monoid, objects, bound


# ------------------------------------------------------------------ plumbing


def _read_json(path):
  try:
    with open(path, "r", encoding="utf-8") as fh:
      return json.load(fh)
  except OSError as e:
    raise ParseError(f"cannot read {path}: {e}") from None
  except json.JSONDecodeError as e:
    raise ParseError(f"{path} is not valid JSON: {e}") from None


def _write_json(data, path):
  with open(path, "w", encoding="utf-8") as fh:
    json.dump(data, fh, indent=2, sort_keys=True)
    fh.write("\n")
