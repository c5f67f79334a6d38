class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug in the library, never a property of the input.
    """


class HypothesisError(ValueError):
    """An operation was called on an input that violates its hypotheses."""
