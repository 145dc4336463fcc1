"""Shared exception types."""


class InvariantError(ValueError):
    """A structural invariant of an input object was violated.

    `invariant` names the violated rule so that loaders can produce a
    diagnostic pointing at the exact condition that failed.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class CapExceeded(RuntimeError):
    """An instance is larger than a configured search cap allows."""


class DimensionCapExceeded(CapExceeded):
    """No realizer with the allowed number of linear orders was found."""
