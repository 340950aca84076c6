class KawtError(Exception):
    pass


class ParseError(KawtError):
    """Malformed source text; `pos` is a 0-based character offset when known."""

    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at offset {pos})")


class SortError(ParseError):
    """An operand of the wrong sort: mixed semirings, negated weightings, etc."""


class UndeclaredIdentifier(ParseError):
    pass


class StarDivergence(KawtError):
    """Partial sums of a Kleene star did not stabilize within the iteration cap."""


class HypothesisError(KawtError):
    """A hypothesis is not a weighting-free equation of the form e = 0."""


class ModelError(KawtError):
    """A model file is malformed or a model violates a stated hypothesis."""
