"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 parse, 3 dimension, 4 numeric, 5 validation.
"""


class QValuationError(Exception):
    exit_code = 5
    code = "error"


class ParseError(QValuationError):
    exit_code = 2
    code = "parse"


class DimensionMismatch(QValuationError):
    exit_code = 3
    code = "dimension"


class DimensionTooSmall(QValuationError):
    exit_code = 3
    code = "dimension"


class NumericError(QValuationError):
    exit_code = 4
    code = "numeric"


class ZeroVector(NumericError):
    pass


class NotHermitian(NumericError):
    pass


class NotIdempotent(NumericError):
    pass


class RankUnsupported(NumericError):
    pass


class ZeroPivot(NumericError):
    pass


class ZeroProjector(NumericError):
    pass


class ValidationError(QValuationError):
    exit_code = 5
    code = "validation"


class PreconditionViolated(ValidationError):
    pass


class InvalidFamily(ValidationError):
    pass


class DegenerateSeries(ValidationError):
    pass


class NotFinalized(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class Infeasible(ValidationError):
    pass


class UnsupportedDim(ValidationError):
    pass
