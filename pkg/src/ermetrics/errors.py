"""Exception hierarchy shared by the library and the CLI."""


class ErMetricsError(Exception):
    """Base class for every error raised by ermetrics."""


class ConflictingAssignment(ErMetricsError):
    def __init__(self, record, first, second, line=None):
        self.record = record
        self.first = first
        self.second = second
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(
            f"record {record!r} assigned to both {first!r} and {second!r}{where}"
        )


class UniverseMismatch(ErMetricsError):
    """Raised under the strict policy when R and S cover different records."""

    def __init__(self, only_left, only_right, n_left, n_right):
        self.only_left = list(only_left)
        self.only_right = list(only_right)
        self.n_left = n_left
        self.n_right = n_right
        super().__init__(
            f"record universes differ: {n_left} only in pred "
            f"(e.g. {self.only_left}), {n_right} only in gold "
            f"(e.g. {self.only_right})"
        )


class EmptyClustering(ErMetricsError):
    pass


class ParseError(ErMetricsError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        loc = ""
        if path is not None:
            loc += f"{path}:"
        if line is not None:
            loc += f"{line}:"
        super().__init__(f"{loc} {message}" if loc else message)


class Unsatisfiable(ErMetricsError):
    """No legal perturbation exists for the requested operation mix."""
