"""Shared error types."""


class GuardError(Exception):
    """A size or structural guard refused the computation."""

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        self.detail = detail
        super().__init__(code if not detail else f"{code}: {detail}")


class IntegrityError(Exception):
    """An internal consistency condition failed; indicates a bug or bad input."""
