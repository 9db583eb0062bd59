"""Exception hierarchy shared by all loopsing modules.

Two broad classes matter to callers: ``InputError`` for malformed input
(bad config, unparsable polynomial, arity mismatches) and ``MathError``
for inputs that are well formed but mathematically impossible to process
(no positive weight solution, no multipower, exhausted retries).  The CLI
maps them to exit codes 2 and 1 respectively.
"""


class LoopsingError(Exception):
    """Base class for all package errors."""


class InputError(LoopsingError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class MathError(LoopsingError):
    """Well-formed input with no mathematical solution (CLI exit code 1)."""


class ArityMismatchError(InputError):
    pass


class OddExponentError(InputError):
    """A square-root style substitution hit an odd exponent."""


class NotQuasihomogeneousError(MathError):
    """No unique positive weight system exists for the input."""


class GraphStructureError(InputError):
    """The choice map does not have the required loop-with-branches shape."""


class CompletionError(MathError):
    """A completion step cannot be carried out (no multipower, retries spent)."""


class ScopeError(LoopsingError):
    """A sector product outside the implemented group scope was requested."""


class ResourceLimitError(LoopsingError):
    """An enumeration would exceed the configured resource cap."""
