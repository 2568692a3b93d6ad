"""Exception types shared across the package."""


class KolakoskiError(Exception):
    """Base class for all errors raised by this package."""


class MaterializationLimitError(KolakoskiError):
    """A word would exceed the configured materialization cap.

    Callers hitting this should switch to the streaming interfaces,
    which compute statistics without building the word.
    """

    def __init__(self, requested: int, cap: int | None, what: str = "word"):
        self.requested = requested
        self.cap = cap
        if cap is None:
            msg = f"{what} of length {requested} is beyond the materialization cap"
        else:
            msg = f"{what} of length {requested} exceeds materialization cap {cap}"
        super().__init__(msg)


class TimeBudgetError(KolakoskiError):
    """A streaming computation ran past its configured time budget."""

    def __init__(self, context: str, budget: float):
        self.context = context
        self.budget = budget
        super().__init__(f"time budget of {budget:g}s exhausted at {context}")


class RootSolverError(KolakoskiError):
    """The polynomial root iteration failed to converge (solver bug)."""
