class CompileError(ValueError):
    """Base class for every diagnostic raised by the compiler."""


class ParseError(CompileError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DecompositionError(CompileError):
    pass


class RoutingError(CompileError):
    pass
