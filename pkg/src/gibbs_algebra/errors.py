"""Exception hierarchy shared by every module."""


class GibbsAlgebraError(Exception):
    """Base class for all library errors."""


class UnsupportedTail(GibbsAlgebraError):
    pass


class InfiniteRange(GibbsAlgebraError):
    pass


class IncompatibleTransform(GibbsAlgebraError):
    pass


class NotFertile(GibbsAlgebraError):
    pass


class ClassMismatch(GibbsAlgebraError):
    pass


class NotOffspring(GibbsAlgebraError):
    pass


class TooLarge(GibbsAlgebraError):
    pass


class SpinMismatch(GibbsAlgebraError):
    pass


class SupportTooLarge(GibbsAlgebraError):
    pass


class ParseError(GibbsAlgebraError):
    pass


class ValidationError(GibbsAlgebraError):
    pass


class UnknownSuite(GibbsAlgebraError):
    pass
