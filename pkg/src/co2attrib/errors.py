"""Exception types shared across the toolkit.

Every exception derives from :class:`ToolkitError` and exposes a stable
machine-readable ``code`` (its class name), which the CLI propagates in
structured error objects.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- ingestion ---------------------------------------------------------

class ParseError(ToolkitError):
    """A cell could not be parsed; message carries row/column location."""


class SchemaError(ToolkitError):
    """A mapped header is missing or the schema itself is malformed."""


class DuplicateRecord(ToolkitError):
    """The same (country, year, factor) or year appears more than once."""


class DomainError(ToolkitError):
    """A value lies outside the mathematically admissible domain."""


class UnknownFactor(ToolkitError):
    """A requested factor name has no data or no name-table entry."""


class EmptyJoin(ToolkitError):
    """Predictor and response year ranges share no usable years."""


class DegenerateTotal(ToolkitError):
    """Contribution percentages are undefined because the total is zero."""


# --- transform ---------------------------------------------------------

class DegenerateSample(ToolkitError):
    """A constant sample admits no normality statistic."""


class SampleTooSmall(ToolkitError):
    """Below the minimum sample size for the p-value approximation."""


# --- design ------------------------------------------------------------

class EmptyFactorSet(ToolkitError):
    """Candidate enumeration needs at least one factor."""


class UnknownTerm(ToolkitError):
    """A term references a factor index outside the dataset."""


# --- regression --------------------------------------------------------

class RankDeficient(ToolkitError):
    """The design matrix is numerically rank deficient."""

    def __init__(self, message: str, column_label: str | None = None):
        super().__init__(message)
        self.column_label = column_label


class Underdetermined(ToolkitError):
    """Too few observations for the requested number of columns."""


class DegenerateResponse(ToolkitError):
    """The response carries no variability to apportion."""


class LeverageOne(ToolkitError):
    """An observation fully determines its own fit (hat diagonal = 1)."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class NotNested(ToolkitError):
    """The reduced model is not a strict sub-model of the full one."""


# --- stepwise ----------------------------------------------------------

class NoUsableCandidates(ToolkitError):
    """Every first-step candidate was rank deficient."""


class EmptySelection(ToolkitError):
    """No terms entered the model, so there is nothing to rank."""


# --- validation --------------------------------------------------------

class FoldRankDeficient(ToolkitError):
    """A cross-validation refit lost rank after removing a fold."""

    def __init__(self, message: str, fold: int | None = None):
        super().__init__(message)
        self.fold = fold


class TooManyFolds(ToolkitError):
    """Fold count outside 2..n."""


# --- quadratic form ----------------------------------------------------

class BackTransformDomain(ToolkitError):
    """Predicted transformed value cannot be mapped back to ppmv."""
