"""Exception types shared across the package."""


class MonoidKitError(Exception):
  """Base class for all errors raised by this package."""


class ParseError(MonoidKitError):
  """An input file is not syntactically well-formed (bad JSON or shape)."""


class InvalidStructure(MonoidKitError):
  """A monoid, action or map failed validation."""


class Undecidable(MonoidKitError):
  """The question has no finite certificate within the supported strategies."""


class NotNormal(MonoidKitError):
  """Operation requires a normal affine monoid."""


class NotZeroSmooth(MonoidKitError):
  """Operation requires a 0-smooth monoid (group units smashed with a free part)."""


class NotIso(MonoidKitError):
  """A quotient-category morphism was expected to be an isomorphism but is not."""


class ClosureBoundExceeded(MonoidKitError):
  """Subquotient closure grew past the configured bound."""


class UnsupportedDegree(MonoidKitError):
  """K-groups in this degree are out of scope."""


class PredicateClosureError(MonoidKitError):
  """A would-be Serre predicate fails closure on the working universe."""
