class RigidLabError(Exception):
    """Base class for errors raised by rigidlab."""


class ParseError(RigidLabError, ValueError):
    """Malformed input text (graph, point, params, matrix or manifest)."""


class PreconditionError(RigidLabError, ValueError):
    """An operation was called outside its stated preconditions."""
