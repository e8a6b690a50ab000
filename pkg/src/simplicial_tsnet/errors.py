"""Exception hierarchy.

Every error carries a short machine-readable ``code``. The CLI maps
:class:`InputError` subclasses to exit status 2 and
:class:`InvariantViolation` to exit status 3.
"""


class TSNetError(Exception):
    code = "error"


class InputError(TSNetError, ValueError):
    code = "input"


class ParameterError(InputError):
    code = "parameter-domain"


class MissingFileError(InputError, FileNotFoundError):
    code = "missing-file"


class ParseError(InputError):
    code = "parse"


class EmptyColumnError(InputError):
    code = "empty-column"


class NonFiniteValueError(InputError):
    code = "non-finite"


class SegmentationError(InputError):
    code = "segmentation"


class DomainError(InputError):
    """Argument outside the mathematical domain of an operation (e.g. bad q level)."""

    code = "domain"


class SchemaMismatchError(InputError):
    code = "schema-mismatch"


class InvariantViolation(TSNetError, AssertionError):
    code = "invariant"
