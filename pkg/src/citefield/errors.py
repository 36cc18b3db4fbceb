"""Exception hierarchy shared across the package."""


class CitefieldError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(CitefieldError):
    """Unparseable record file or BibTeX entry."""


class StyleError(CitefieldError):
    """Invalid citation style or unrenderable record/style combination."""


class VocabError(CitefieldError):
    """Subword vocabulary construction or lookup failure."""


class EncodingError(CitefieldError):
    """Citation cannot be encoded into a subword sequence."""


class ModelError(CitefieldError):
    """Invalid model state, file, or vocabulary mismatch."""


class TrainingError(CitefieldError):
    """Non-finite loss or other unrecoverable training failure.

    `index` identifies the offending unit (citation index, epoch, or step,
    depending on the stage that raised).
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class AnchorError(CitefieldError):
    """Anchor scoring contract violation (degenerate venue, bad position)."""


class MaskingError(CitefieldError):
    """Masking plan construction or consumption failure."""


class MetricsError(CitefieldError):
    """Mismatched prediction/gold inputs to an evaluation routine."""


class ConfigError(CitefieldError):
    """Invalid pipeline configuration."""


class StageError(CitefieldError):
    """Pipeline stage failure; wraps the underlying error with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
