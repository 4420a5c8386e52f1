"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
it without a lookup table.
"""


class DimerWitError(Exception):
    exit_code = 1


class DimensionOverflow(DimerWitError, ValueError):
    """Hilbert space of the requested cluster exceeds the dense-matrix cap."""


class NotHermitian(DimerWitError, ValueError):
    pass


class DataError(DimerWitError):
    """Problems with an input dataset (exit code 2)."""

    exit_code = 2

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class NonPositiveTemperature(DataError, ValueError):
    pass


class MalformedRow(DataError):
    pass


class DuplicateTemperature(DataError):
    pass


class EmptyDataset(DataError):
    pass


class InsufficientData(DataError):
    pass


class SingularNormalMatrix(DimerWitError):
    """Gauss-Newton normal matrix is numerically rank deficient."""

    exit_code = 3


class NotConverged(DimerWitError):
    exit_code = 3


class NoEntanglementTemperature(DimerWitError):
    """The witness never crosses zero from below on the search range."""

    exit_code = 4
