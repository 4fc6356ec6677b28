"""Exception types shared across the package."""


class JudgeError(Exception):
    """Base class for all package-specific errors."""


class MalformedRecord(JudgeError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class MissingField(JudgeError):
    def __init__(self, field: str):
        super().__init__(f"missing required field: {field}")
        self.field = field


class BadVerdictString(JudgeError):
    def __init__(self, value: str):
        super().__init__(f"verdict must be exactly 'Correct' or 'Incorrect', got {value!r}")
        self.value = value


class IoFailure(JudgeError):
    pass


class ParseFailure(JudgeError):
    def __init__(self, message: str, pos: int = 0):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class IncompatibleUnits(JudgeError):
    pass


class AmbiguousLabel(JudgeError):
    pass


class NoOptionsDetected(JudgeError):
    pass


class TooFewDistractors(JudgeError):
    pass


class NotMathAnswer(JudgeError):
    pass


class InsufficientForms(JudgeError):
    pass


class NoMarkerFound(JudgeError):
    pass


class IndexOutOfRange(JudgeError):
    pass


class MissingLabel(JudgeError):
    def __init__(self, index: int):
        super().__init__(f"record {index} has no human judgment label")
        self.index = index
