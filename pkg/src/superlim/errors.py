"""Exception hierarchy shared by every module."""


class SuperlimError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class ZeroSeries(SuperlimError, ZeroDivisionError):
    pass


class DivergentLimit(SuperlimError):
    """A coefficient with a negative power of epsilon survived the limit."""


class TruncationError(SuperlimError):
    """The series is not known to high enough order to take the limit."""


class ZeroPolynomial(SuperlimError):
    pass


class BadMultiplicity(SuperlimError):
    pass


class SingularMatrix(SuperlimError):
    pass


class SingularPoint(SuperlimError):
    def __init__(self, locus: str, point=None):
        self.locus = locus
        self.point = point
        super().__init__(f"point {point!r} lies on the singular locus {locus} = 0")


class UnsupportedPoint(SuperlimError):
    pass


class UnknownSystem(SuperlimError, KeyError):
    pass


class UnknownContraction(SuperlimError, KeyError):
    pass


class DegenerateQuadruple(SuperlimError):
    pass


class DegenerateCrossRatio(SuperlimError):
    pass


class DegenerateSextuple(SuperlimError):
    pass


class WrongSignature(SuperlimError):
    pass


class RankDeficient(SuperlimError):
    pass


class NoMatch(SuperlimError):
    def __init__(self, defect: float, tol: float):
        self.defect = defect
        super().__init__(f"projective defect {defect:.3e} exceeds {tol:.1e}")


class ParseError(SuperlimError, ValueError):
    pass


class UnsupportedFormat(SuperlimError):
    pass
