"""Exception hierarchy shared by the algebra, the consensus engine and the CLI."""


class LinguisticError(Exception):
    """Base class for every error raised by this package."""


class ScaleMismatchError(LinguisticError, ValueError):
    """Operands were built against different linguistic scales."""


class DomainError(LinguisticError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ValidationError(LinguisticError, ValueError):
    """A problem definition violates a structural or bounds invariant."""


class PanelTooSmallError(LinguisticError, ValueError):
    """Entropy weighting needs at least two experts (ln p must be nonzero)."""


class DegenerateCellError(LinguisticError, ArithmeticError):
    """A matrix cell makes a ratio or entropy undefined.

    ``round``, ``expert`` and ``cell`` are filled in as far as they are known
    at the point of failure; the consensus loop adds the round number.
    """

    def __init__(self, message, *, round=None, expert=None, cell=None):
        self.detail = message
        self.round = round
        self.expert = expert
        self.cell = cell
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.round is not None:
            where.append(f"round {self.round}")
        if self.expert is not None:
            where.append(f"expert {self.expert!r}")
        if self.cell is not None:
            where.append(f"cell {self.cell}")
        if where:
            return f"{', '.join(where)}: {self.detail}"
        return self.detail


class TraceWriteError(LinguisticError, OSError):
    """The trace destination could not be written."""
