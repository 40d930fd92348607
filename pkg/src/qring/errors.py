"""Exception hierarchy shared by every module."""


class QRingError(Exception):
    """Base class for all library errors."""


class StructuralError(QRingError, ValueError):
    """An element does not belong to the ring it is used with."""


class UnsupportedOperation(QRingError):
    pass


class InvalidIdeal(QRingError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidWindow(QRingError, ValueError):
    pass


class PreconditionError(QRingError, ValueError):
    pass


class InconsistencyError(QRingError):
    """Raised when a construction meets data that no quasi-order can produce."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RejectedInput(QRingError):
    """The relation failed its axiom check; ``report`` carries the witnesses."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class LimitError(QRingError, ValueError):
    pass


class StructureFileError(QRingError, ValueError):
    """Malformed structure description; ``location`` is a dotted key path."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location


class UnknownBuiltin(QRingError, LookupError):
    pass
