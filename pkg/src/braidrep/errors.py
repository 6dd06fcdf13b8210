"""Exception types raised by braidrep."""


class BraidRepError(Exception):
    """Base class for all library errors."""


class EvalAtZero(BraidRepError, ZeroDivisionError):
    pass


class ScalarParseError(BraidRepError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class NonInvertibleScale(BraidRepError, ArithmeticError):
    pass


class TupleTooShort(BraidRepError, ValueError):
    pass


class IndexOutOfRange(BraidRepError, IndexError):
    pass


class NotBinaryTuple(BraidRepError, ValueError):
    pass


class DimMismatch(BraidRepError, ValueError):
    pass


class BadRange(BraidRepError, ValueError):
    pass


class MissingQEntry(BraidRepError, KeyError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"q-table has no entry for pair ({a},{b})")

    def __str__(self):
        return self.args[0]


class ZeroQEntry(BraidRepError, ValueError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"q-table entry for pair ({a},{b}) is zero")


class ParseError(BraidRepError, ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ZeroGenerator(ParseError):
    pass


class GeneratorOutOfRange(BraidRepError, IndexError):
    pass
