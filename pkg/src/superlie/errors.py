"""Exception hierarchy shared by all modules."""


class SuperLieError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SuperLieError, ValueError):
    pass


class SingularMatrix(SuperLieError, ValueError):
    pass


class IrrationalSpectrum(SuperLieError):
    """Eigenvalues are not all rational; an algebraic extension would be needed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        #: partial result computed before the failure (e.g. a torus), if any
        self.partial = partial


class NotCommuting(SuperLieError):
    pass


class NotDiagonalizable(SuperLieError):
    pass


class NotSemisimple(SuperLieError):
    pass


class NotHomogeneous(SuperLieError, ValueError):
    pass


class NotNilpotent(SuperLieError):
    pass


class NotSolvable(SuperLieError):
    pass


class NilradicalVerificationFailed(SuperLieError):
    """The candidate nilradical could not be certified; no answer is returned."""


class NotADerivation(SuperLieError):
    pass


class NotMaximalRank(SuperLieError):
    pass


class TorusNormalizationFailed(SuperLieError):
    pass


class PreconditionNotMet(SuperLieError):
    """Input lies outside the hypothesis of a check (not a counterexample)."""


class ParseError(SuperLieError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnknownLabel(ParseError):
    pass


class DuplicateBracket(ParseError):
    pass


class ParityMismatch(ParseError):
    pass
