"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ParseError(DomainError):
    """Malformed shape text; carries the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})", position)
        self.position = position

    def __str__(self) -> str:  # ValueError would render the args tuple
        return self.args[0]


class CapExceeded(RuntimeError):
    """A computation was refused because it exceeds a resource cap."""
