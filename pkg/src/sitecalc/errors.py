"""Exception types raised across the package."""


class SitecalcError(Exception):
    """Base class for all errors raised by sitecalc."""


class DanglingReference(SitecalcError):
    """An identifier names nothing in the structure it belongs to."""


class UnknownObject(SitecalcError):
    pass


class TargetMismatch(SitecalcError):
    pass


class ShapeMismatch(SitecalcError):
    pass


class BaseMismatch(SitecalcError):
    pass


class EndpointMismatch(SitecalcError):
    pass


class NotMono(SitecalcError):
    pass


class NotASheaf(SitecalcError):
    pass


class CoconeMismatch(SitecalcError):
    pass


class ConstructionError(SitecalcError):
    pass


class InvariantViolation(SitecalcError):
    """A result that theory guarantees failed its own check."""


class CapExceeded(SitecalcError):
    """An enumeration ran past the configured candidate cap."""


class SiteFileError(SitecalcError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class SiteSyntaxError(SiteFileError):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message}; expected one of: {' '.join(self.expected)}"
        super().__init__(message, line, col)


class DuplicateName(SiteFileError):
    pass


class UnresolvedReference(SiteFileError):
    pass
