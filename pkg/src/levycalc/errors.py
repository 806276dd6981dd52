"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class LevyCalcError(Exception):
    exit_code = 1


class InvalidMeasure(LevyCalcError, ValueError):
    exit_code = 3


class NonFinite(LevyCalcError):
    exit_code = 3


class LogMomentDiverges(NonFinite):
    pass


class UnsupportedSeed(LevyCalcError):
    exit_code = 3


class QuadratureFailure(LevyCalcError):
    exit_code = 4

    def __init__(self, message, error_estimate=None):
        super().__init__(message)
        self.error_estimate = error_estimate


class GridTooCoarse(QuadratureFailure):
    pass


class DifferentiationUnstable(LevyCalcError):
    exit_code = 4

    def __init__(self, message, disagreement=None):
        super().__init__(message)
        self.disagreement = disagreement


class MalformedDocument(LevyCalcError, ValueError):
    exit_code = 2


class VerificationFailed(LevyCalcError):
    exit_code = 4
