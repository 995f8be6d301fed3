class UWMError(Exception):
    """Base class for all library errors."""


class InvariantError(UWMError, ValueError):
    """A value violates a structural invariant (row/column weight, root range, ...)."""


class FormatError(UWMError, ValueError):
    """Syntax error in a matrix file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class BudgetExceeded(UWMError, RuntimeError):
    """A search ran out of its node budget before finishing."""

    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"node budget exhausted ({nodes} nodes visited, budget {budget})")
