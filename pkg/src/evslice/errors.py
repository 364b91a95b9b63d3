"""Exception types shared across the package.

Every error class carries a distinct process exit code so the CLI can map
failures one-to-one onto documented statuses.
"""


class EvsliceError(Exception):
    """Base class for all evslice errors."""

    exit_code = 1


class MalformedRecordError(EvsliceError):
    """A wire-format record could not be parsed."""

    exit_code = 3

    def __init__(self, line_number, reason):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class EmptyStreamError(EvsliceError):
    """The input contained no event records."""

    exit_code = 4

    def __init__(self, message="empty input: no event records"):
        super().__init__(message)


class ResolutionUndefinedError(EvsliceError):
    """No positive gap exists between event timestamps."""

    exit_code = 5

    def __init__(self, message="resolution undefined: all events share one timestamp"):
        super().__init__(message)


class InsufficientEventsError(EvsliceError):
    """Fewer events than requested slices."""

    exit_code = 6

    def __init__(self, n_events, k):
        self.n_events = n_events
        self.k = k
        super().__init__(
            f"insufficient events: {n_events} event(s) cannot fill {k} slice(s)"
        )


class CoarseResolutionError(EvsliceError):
    """The histogram does not have enough occupied bins for k slices."""

    exit_code = 7

    def __init__(self, k, max_feasible_k):
        self.k = k
        self.max_feasible_k = max_feasible_k
        super().__init__(
            f"resolution too coarse for {k} slices: at most {max_feasible_k} feasible"
        )


class DegenerateExtentError(EvsliceError):
    """The time extent cannot support the requested partition."""

    exit_code = 8

    def __init__(self, message="degenerate extent: T = 0 supports only a single slice"):
        super().__init__(message)
