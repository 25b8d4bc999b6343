"""Exception types shared by all solver and I/O modules."""


class ForestError(Exception):
    """Base class for all library errors."""


class ParseError(ForestError):
    """Malformed edge-list document (bad header, bad line, id out of range)."""


class NotAForest(ForestError):
    """The described graph contains a cycle, a self-loop, or a parallel edge."""


class NotConnected(ForestError):
    """A tree-valued argument has zero or several components."""


class BadRoots(ForestError):
    """Root list does not hit every component exactly once."""


class EmptyInput(ForestError):
    """An operation that needs at least one tree received none."""


class BudgetExceeded(ForestError):
    """A search budget ran out; the result is unknown, never wrong."""


class SizeLimit(ForestError):
    """Partition ground set exceeds the configured cap (degree assumption violated)."""


class StateExplosion(ForestError):
    """Vector-set dynamic program exceeded its memory budget."""


class CapExceeded(ForestError):
    """Requested catalog size is beyond the configured cap."""


class InvalidInstance(ForestError):
    """Generator input violates the instance family's constraints."""
