"""Exception hierarchy.

Three families, matching the CLI exit-code contract: ParseError (3) for
malformed input files, ValidationError (4) for inputs that parse but violate a
documented precondition, NumericalError (5) for conditions that make the
numerics meaningless (ill-conditioned Gram matrices and friends).
"""


class PolyliftError(Exception):
    exit_code = 1


class ParseError(PolyliftError):
    exit_code = 3


class ValidationError(PolyliftError):
    exit_code = 4


class NumericalError(PolyliftError):
    exit_code = 5


class DimensionMismatch(ValidationError):
    pass


class PoleAtZero(ValidationError):
    pass


class EmptyGrid(ValidationError):
    pass


class NotAnalytic(ValidationError):
    pass


class NotInDisc(ValidationError):
    pass


class DuplicateNodes(ValidationError):
    pass


# spec names this one DuplicatePoints on the kernels side; same condition.
DuplicatePoints = DuplicateNodes


class NotAModuleMap(ValidationError):
    pass


class NotAContraction(ValidationError):
    pass


class NotInnerMonomial(ValidationError):
    pass


class DegreeTooHigh(ValidationError):
    pass


class ZeroFunction(ValidationError):
    pass


class HypothesisFailed(ValidationError):
    """A hypothesis of the constructive interpolation theorem failed.

    Carries which hypothesis and the offending quantity so callers can report
    the failure numerically instead of as a bare boolean.
    """

    def __init__(self, hypothesis: str, detail: str):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"hypothesis {hypothesis}: {detail}")


class WrongDimension(ValidationError):
    pass


class IllConditioned(NumericalError):
    pass
