"""Exceptions raised by radial-channels.

Every error carries a numeric ``code``. Inside the library it only classifies the failure; once an error reaches the
command line the same code becomes the process exit status.
"""


class RadialChannelError(Exception):
    """Base for radial-channels errors.

    Such errors can be translated into an error response, other errors will be reported as internal error by the
    command service.

    Attributes:
        code (int): Error code, used as exit status by the command line.
        message (str): Error message
        data (Any): Arbitrary data about the error.
    """

    def __init__(self, code, message, data=None):
        """
        Args:
            code (int): Error code
            message (str): Error message
            data (Any): Arbitrary data about the error.
        """
        super().__init__(message)
        self.code = code
        self.message = message
        self.data = data


class VerificationFailed(RadialChannelError):
    """Error raised when a numerical verification does not hold within its tolerance."""
    code = 1

    def __init__(self, message="Verification failed", data=None):
        super().__init__(self.code, message, data)


class SpecParseError(RadialChannelError):
    """Error raised when a channel spec or a command request cannot be parsed."""
    code = 2

    def __init__(self, message="Parse error", data=None):
        super().__init__(self.code, message, data)


class InvalidRequest(RadialChannelError):
    """Error raised for well-formed requests which cannot be served."""
    code = 3

    def __init__(self, message="Invalid request", data=None):
        super().__init__(self.code, message, data)


class DimensionError(InvalidRequest, ValueError):
    """Error raised when array lengths, matrix sizes or the dimension n are not acceptable."""

    def __init__(self, message="Invalid dimension", data=None):
        super().__init__(message, data)


class InvalidParameter(InvalidRequest, ValueError):
    """Error raised for out of range scalar parameters (exponents, times, tolerances)."""

    def __init__(self, message="Invalid parameter", data=None):
        super().__init__(message, data)


class NotAQuantumChannel(InvalidRequest):
    """Error raised when a quantity defined only for quantum channels is requested for another map."""

    def __init__(self, message="Not a quantum channel", data=None):
        super().__init__(message, data)


class InvalidState(InvalidRequest):
    """Error raised when a matrix is not a density operator."""

    def __init__(self, message="Invalid density operator", data=None):
        super().__init__(message, data)


class InternalError(RadialChannelError):
    """Error raised for failures which are not caused by the request itself."""
    code = 4

    def __init__(self, message="Internal error", data=None):
        super().__init__(self.code, message, data)
