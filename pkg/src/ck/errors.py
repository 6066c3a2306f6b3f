"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: 1 usage/config, 2 data, 3 backend.
"""


class CkError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class UsageError(CkError):
    """Bad invocation or bad configuration."""

    exit_code = 1


class ConfigError(UsageError):
    pass


class DataError(CkError):
    """Invalid or inconsistent input data."""

    exit_code = 2


class ParseError(DataError):
    """Input bytes could not be parsed.

    ``offset`` is a best-effort byte offset into the input, ``line`` a
    1-based line number; either may be None.
    """

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = []
        if offset is not None:
            where.append(f"byte {offset}")
        if line is not None:
            where.append(f"line {line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class EmptyInputError(DataError):
    pass


class ValidationError(DataError):
    pass


class DegenerateInputError(DataError):
    """Statistic undefined for this input (e.g. all-zero differences)."""


class UnknownIdError(DataError):
    pass


class BackendError(CkError):
    """A classifier/extractor/explainer backend failed and no fallback applied."""

    exit_code = 3


class PipelineError(CkError):
    """Failure inside run_pipeline, annotated with the failing stage."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"pipeline stage '{stage}' failed: {cause}")
        self.exit_code = getattr(cause, "exit_code", 2)
