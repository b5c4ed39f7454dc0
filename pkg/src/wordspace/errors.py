"""Exception types shared across the package."""


class WordspaceError(Exception):
    """Base class for all package errors."""


class ConfigError(WordspaceError):
    """Invalid configuration or parameter combination."""


class InputError(WordspaceError):
    """Unreadable or structurally invalid input data."""


class FormatError(WordspaceError):
    """Malformed model file. Carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class WordNotFoundError(WordspaceError):
    """Query word(s) absent from the model vocabulary."""

    def __init__(self, words):
        words = [words] if isinstance(words, str) else list(words)
        super().__init__("not in vocabulary: " + ", ".join(words))
        self.words = words


class ZeroVectorError(WordspaceError):
    """Cosine similarity is undefined for a zero-norm vector."""


class EvaluationError(WordspaceError):
    """Relation evaluation cannot produce a result."""
