class PebbletkError(Exception):
    """Base class for all library errors."""


class AlphabetError(PebbletkError):
    """A word uses a letter outside the relevant alphabet."""


class RejectionError(PebbletkError):
    """A two-way transducer got stuck or fell off the tape."""


class DivergenceError(PebbletkError):
    """A two-way transducer repeated a configuration (infinite run)."""


class MachineError(PebbletkError):
    """A machine definition violates a structural invariant."""


class PumpableViolation(PebbletkError):
    """A layer-removal runtime assertion tripped: the machine was pumpable
    even though the construction was entered under a not-pumpable guard."""


class BudgetExceeded(PebbletkError):
    """An enumeration exceeded its configured budget; the result is
    inconclusive, which is distinct from a negative answer."""


class ExplicationError(PebbletkError):
    """Descriptor or annotation space grew past the configured cap."""


class ParseError(PebbletkError):
    def __init__(self, message, line=None, col=None):
        loc = "" if line is None else f" at line {line}" + ("" if col is None else f", column {col}")
        super().__init__(message + loc)
        self.line = line
        self.col = col


class SemanticError(PebbletkError):
    """A machine file parsed but is inconsistent (duplicate names, bad refs...)."""
