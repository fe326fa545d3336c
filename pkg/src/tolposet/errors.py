class PosetError(ValueError):
    """Invalid poset data: unknown or duplicate labels, cycles, bad shapes."""


class RelationError(ValueError):
    """A relation fails a precondition (not reflexive, not a tolerance, ...)."""


class TheoremFalsification(RuntimeError):
    """A property that is supposed to hold by theorem was observed to fail.

    Raised by the construction checks in the quotient and refinement code.
    It is never expected on valid input; seeing it means either a bug here
    or a counterexample.
    """


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<input>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")
