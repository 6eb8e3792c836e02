"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input or an operation applied outside its domain."""


class UnsupportedFamilyError(GraphError):
    """Graph is not a recognized de Bruijn or Kautz graph."""


class InvalidTreeArrayError(ValueError):
    """Array of lists violates a tree-array invariant."""


class InvalidTreeError(ValueError):
    """Edge set is not an oriented spanning tree."""


class InvalidSequenceError(ValueError):
    """Bit string is not a de Bruijn sequence of the stated degree."""


class EnumerationBound(RuntimeError):
    """A brute-force enumeration would exceed its configured bound."""
