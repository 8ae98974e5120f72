"""Exception hierarchy shared by every congrlab module."""


class CongrlabError(Exception):
    """Base class for all toolkit errors."""


class CompositeModulus(CongrlabError, ValueError):
    pass


class NotInvertible(CongrlabError, ZeroDivisionError):
    pass


class InvalidSpec(CongrlabError, ValueError):
    pass


class ContextMismatch(CongrlabError, ValueError):
    pass


class EmptySet(CongrlabError, ValueError):
    pass


class SliceTooLarge(CongrlabError, ValueError):
    pass


class InvalidRange(CongrlabError, ValueError):
    pass


class ZeroInSet(CongrlabError, ValueError):
    pass


class ZeroLambda(CongrlabError, ValueError):
    pass


class NotSquarefree(CongrlabError, ValueError):
    pass


class TooLarge(CongrlabError, RuntimeError):
    """An enumeration would exceed the configured budget."""


class DenominatorDivisibleByP(CongrlabError, ValueError):
    pass


class RangeTooLarge(CongrlabError, ValueError):
    pass


class OrderTooSmall(CongrlabError, ValueError):
    pass


class NotSubgroup(CongrlabError, ValueError):
    pass


class InvalidOrder(CongrlabError, ValueError):
    pass


class ConfigError(CongrlabError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(ConfigError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
