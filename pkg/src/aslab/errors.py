"""Exception hierarchy shared by every aslab module."""


class AslabError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class DomainError(AslabError, ValueError):
    pass


class DivisionByZero(AslabError, ZeroDivisionError):
    pass


class ZeroArgument(DomainError):
    pass


class UnsupportedPole(DomainError):
    pass


class CapExhausted(DomainError):
    pass


class InsufficientPrecision(DomainError):
    pass


class NotAResidueRoot(DomainError):
    pass


class NonUnitLeadingCoefficient(DomainError):
    pass


# padic_hensel_lift_as uses the shorter name
NonUnit = NonUnitLeadingCoefficient


class RootedD(DomainError):
    pass


class NonPositiveVp(DomainError):
    pass


class BudgetExceeded(AslabError):
    pass


class OracleDomainError(DomainError):
    pass


class WindowTooSmall(AslabError):
    pass


class SearchExhausted(AslabError):
    pass


class ResidueMismatch(DomainError):
    pass


class NonIntegralInput(DomainError):
    pass


class InconsistentDescriptor(DomainError):
    pass


class IncompatibleComposition(DomainError):
    pass


class ParseError(DomainError):
    pass
