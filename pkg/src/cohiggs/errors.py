"""Exception hierarchy shared by every module of the package."""


class CoHiggsError(Exception):
    pass


class FieldMismatch(CoHiggsError):
    """Two scalars live in incompatible quadratic towers."""


class TowerDepthExceeded(CoHiggsError):
    pass


class ZeroRadicand(CoHiggsError):
    pass


class DegreeExceeded(CoHiggsError):
    pass


class DimensionMismatch(CoHiggsError):
    pass


class SingularEvaluationPoint(CoHiggsError):
    """A rational function was evaluated where its denominator vanishes."""


class NotASquare(CoHiggsError):
    pass


class ZeroSection(CoHiggsError):
    pass


class ZeroInput(CoHiggsError):
    pass


class ExcludedIndex(CoHiggsError):
    pass


class Unclassifiable(CoHiggsError):
    pass


class ParseError(CoHiggsError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
