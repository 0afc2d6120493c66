"""Exception hierarchy with machine-readable codes.

The CLI maps codes to exit statuses: parse errors exit 3, mathematical
precondition violations exit 1, internal invariant breaches exit 4.
"""


class VeerflowError(Exception):
    code = "error"
    exit_status = 1


class ParseError(VeerflowError):
    """Malformed input document; carries line/column when known."""

    code = "parse"
    exit_status = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column is not None else "") + f": {message}"
        super().__init__(message)


class NotTaut(VeerflowError):
    code = "not-taut"


class NotVeering(VeerflowError):
    code = "not-veering"


class NotACycle(VeerflowError):
    code = "not-a-cycle"


class InvalidCocycle(VeerflowError):
    code = "invalid-cocycle"


class NotInCone(VeerflowError):
    code = "not-in-cone"


class NegativeWeight(VeerflowError):
    code = "negative-weight"


class NotPositive(VeerflowError):
    """Class fails strict positivity on directed cycles; carries a witness cycle."""

    code = "not-positive"

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TooLarge(VeerflowError):
    code = "too-large"


class DimensionMismatch(VeerflowError):
    code = "dimension-mismatch"


class DepthExceeded(VeerflowError):
    """Honest failure: the configured unrolling/patch bound was reached."""

    code = "depth-exceeded"


class InternalInvariantError(VeerflowError):
    """Must never fire on valid input; indicates a logic bug."""

    code = "internal"
    exit_status = 4


class InconsistentClassification(InternalInvariantError):
    code = "inconsistent-turn"


class PositionError(InternalInvariantError):
    code = "dual-position"


class GluingConflict(InternalInvariantError):
    code = "gluing-conflict"


class MismatchError(InternalInvariantError):
    code = "restriction-mismatch"
