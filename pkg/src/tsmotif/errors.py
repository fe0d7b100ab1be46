"""Exception hierarchy shared by every stage of the pipeline."""


class TsMotifError(Exception):
    """Base class for all package errors."""


class ParameterError(TsMotifError, ValueError):
    """An argument or configuration value is out of its valid range."""


class DataError(TsMotifError, ValueError):
    """Input data is malformed (unparseable rows, non-finite values)."""


class DegenerateInputError(DataError):
    """Input is well formed but carries no usable signal (e.g. zero variance)."""
