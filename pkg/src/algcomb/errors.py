"""Exception hierarchy shared by every module."""


class AlgCombError(Exception):
    """Base class for all errors raised by the package."""


class PreconditionError(AlgCombError, ValueError):
    """Input does not satisfy the documented precondition of an operation."""


class GuardExceeded(AlgCombError):
    """A brute-force search would exceed its configured size limit."""

    def __init__(self, name, value, limit):
        self.name = name
        self.value = value
        self.limit = limit
        super().__init__(
            f"guard {name!r} exceeded: {value} > {limit}; "
            f"raise it explicitly (e.g. --guard {name}=<n>) to run anyway"
        )


class TheoremViolation(AlgCombError, AssertionError):
    """A proven statement failed on concrete data: an implementation bug."""


def check_guard(name, value, limit):
    if value > limit:
        raise GuardExceeded(name, value, limit)
