"""Exception hierarchy shared by all lzrl modules."""


class LZRLError(Exception):
    """Base class for every error raised by this package."""


class CodewordError(LZRLError, ValueError):
    pass


class TruncatedCodeword(CodewordError):
    """The bit stream ended in the middle of a codeword."""


class MalformedCodeword(CodewordError):
    """No valid codeword (or phrase) starts at the given offset."""


class InvalidParsing(LZRLError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DanglingReference(LZRLError, ValueError):
    """A reference would copy from before the start of the text."""


class InstanceTooLarge(LZRLError, ValueError):
    pass


class InfeasibleEdge(LZRLError, ValueError):
    pass


class InvalidParams(LZRLError, ValueError):
    pass


class UnsupportedOrder(LZRLError, ValueError):
    pass


class InstanceTooSmall(LZRLError, ValueError):
    pass


class DomainError(LZRLError, ValueError):
    pass


class FormatError(LZRLError, ValueError):
    """A file does not follow the expected on-disk layout."""
