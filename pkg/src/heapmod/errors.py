"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class HeapModError(Exception):
    exit_code = 1


class StructuralError(HeapModError, ValueError):
    """Malformed input: wrong table length, out-of-range entry, bad file."""
    exit_code = 2


class AxiomError(HeapModError):
    """A mathematical check failed on user-supplied data."""
    exit_code = 1

    def __init__(self, message, report=None, witness=None):
        super().__init__(message)
        self.report = report
        self.witness = witness


class PreconditionError(AxiomError):
    """An operation was called on data violating its mathematical precondition."""


class ContractViolation(HeapModError, AssertionError):
    """A statement that must hold (a theorem) failed.  Indicates a bug or corrupt input."""
    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(HeapModError):
    exit_code = 3
