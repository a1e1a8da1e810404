"""Exception types shared by every module."""


class PerisplitError(Exception):
    """Base class for library errors."""


class InvariantViolation(PerisplitError):
    """A mathematical identity that must hold failed to hold.

    ``anchor`` names the identity in words, e.g. ``"Pf(f)^2 = det(f)"``.
    """

    def __init__(self, message: str, anchor: str = ""):
        super().__init__(f"{message} [{anchor}]" if anchor else message)
        self.anchor = anchor


class BudgetExceeded(PerisplitError):
    """A Groebner or Koszul computation ran out of its step budget."""

    def __init__(self, message: str, anchor: str = "step budget"):
        super().__init__(f"{message} [{anchor}]")
        self.anchor = anchor
