"""Exception hierarchy shared by every module."""


class OstrogradskyError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class DomainError(OstrogradskyError, ValueError):
    pass


class InvalidDigits(OstrogradskyError, ValueError):
    pass


class TooShort(OstrogradskyError, ValueError):
    pass


class ParseError(OstrogradskyError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ValidityError(OstrogradskyError, ValueError):
    pass


class BudgetExceeded(OstrogradskyError, RuntimeError):
    def __init__(self, message, max_depth=None):
        self.max_depth = max_depth
        super().__init__(message)


class InvalidLaw(OstrogradskyError, ValueError):
    pass
