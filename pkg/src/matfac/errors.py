"""Exception hierarchy shared by all estimation and I/O routines.

Every error carries a short machine-stable ``token`` that the command-line
driver prints as the first word on stderr, so scripts can branch on failure
modes without parsing prose.
"""

from __future__ import annotations


class MatfacError(Exception):
    """Base class for all package errors."""

    token = "Error"


class NonSquareError(MatfacError):
    token = "NonSquare"


class NonSymmetricError(MatfacError):
    """Relative asymmetry above tolerance; signals an upstream bug."""

    token = "NonSymmetric"


class NonFiniteError(MatfacError):
    """NaN or Inf entry. ``where`` holds the first offending coordinate."""

    token = "NonFinite"

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class RankDeficientError(MatfacError):
    """Spectrum fell below the configured floor.

    ``floored`` counts the eigenvalues (or singular values) at or below the
    floor when that count is meaningful for diagnosis.
    """

    token = "RankDeficient"

    def __init__(self, message, floored=0):
        super().__init__(message)
        self.floored = floored


class DimMismatchError(MatfacError):
    token = "DimMismatch"


class BadDimsError(MatfacError):
    token = "BadDims"


class DegenerateWeightsError(MatfacError):
    token = "DegenerateWeights"


class BadConfigError(MatfacError):
    token = "BadConfig"


class EmptyInputError(MatfacError):
    token = "Empty"


class DegenerateDenominatorError(MatfacError):
    token = "DegenerateDenominator"


class PanelIoError(MatfacError):
    token = "Io"


class PanelParseError(MatfacError):
    """Unparseable CSV content; ``line`` is the 1-based line number."""

    token = "Parse"

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class MissingCellError(MatfacError):
    token = "MissingCell"

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class DuplicateCellError(MatfacError):
    token = "DuplicateCell"

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell
