"""Exception types shared across the package."""


class DiagramError(ValueError):
    """Malformed or inconsistent Coxeter diagram document."""


class WordError(ValueError):
    """Invalid word, position or chamber for the ambient diagram."""


class NotReducedError(WordError):
    def __init__(self, word_text: str, reduced_text: str):
        super().__init__(f"word {word_text!r} is not reduced; it reduces to {reduced_text!r}")
        self.word_text = word_text
        self.reduced_text = reduced_text


class CapExceeded(RuntimeError):
    """An enumeration grew past its hard size cap."""


class Inconclusive(CapExceeded):
    """A search hit its cap before its stopping rule could fire."""


class PreconditionError(ValueError):
    """Inputs do not satisfy the hypotheses of the requested construction."""


class ConsistencyError(AssertionError):
    """A configuration contradicts a proven structural fact (indicates a bug)."""
