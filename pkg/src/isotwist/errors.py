"""Exception hierarchy shared by every module of the package."""


class IsotwistError(Exception):
    """Base class for all errors raised by isotwist."""


class InvalidField(IsotwistError, ValueError):
    pass


class FieldMismatch(IsotwistError, ValueError):
    pass


class DivisionByZero(IsotwistError, ZeroDivisionError):
    pass


class NoEmbedding(IsotwistError, ValueError):
    pass


class ParseError(IsotwistError, ValueError):
    pass


class BothZero(IsotwistError, ValueError):
    pass


class ZeroInput(IsotwistError, ValueError):
    pass


class NonCubic(IsotwistError, ValueError):
    pass


class InvalidCurve(IsotwistError, ValueError):
    pass


class NotOnCurve(IsotwistError, ValueError):
    pass


class ConstantPoint(IsotwistError, ValueError):
    pass


class FieldTooLarge(IsotwistError, ValueError):
    pass


class BudgetExceeded(IsotwistError, RuntimeError):
    pass


class InvalidFilter(IsotwistError, ValueError):
    pass


class NotSeparable(IsotwistError, ValueError):
    pass


class GammaNotConstant(IsotwistError, ValueError):
    pass


class DecompositionFailed(IsotwistError, RuntimeError):
    pass


class InvalidGenus(IsotwistError, ValueError):
    pass


class InvalidDegree(IsotwistError, ValueError):
    pass


class InvalidLattice(IsotwistError, ValueError):
    pass


class BadResidue(IsotwistError, ValueError):
    pass


class Unrealizable(IsotwistError, ValueError):
    pass
