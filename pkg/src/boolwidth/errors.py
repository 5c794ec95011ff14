"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed graph, tree or matrix file."""


class TreeError(ValueError):
    """A decomposition tree is invalid or does not match its graph."""


class RefusalError(RuntimeError):
    """An input exceeds a size guard or a configured cap.

    Distinct from bad input: the request is well-formed but too large to
    handle at desk scale.
    """


class ClassCapExceeded(RefusalError):
    """Too many equivalence classes on a cut."""
