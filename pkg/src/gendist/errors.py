"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed ``.mua``, ``.fa`` or choice-sequence input."""

    def __init__(self, message: str, line: int | None = None, position: int | None = None):
        self.line = line
        self.position = position
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"token {position}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ContractViolation(ValueError):
    """An operation was called with arguments outside its precondition."""
