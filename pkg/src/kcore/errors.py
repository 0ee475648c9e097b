class InputError(ValueError):
    """Malformed user input: group files, words, core files, flags."""


class GroupAxiomError(InputError):
    def __init__(self, axiom, detail=""):
        self.axiom = axiom
        msg = f"group table violates {axiom}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class FiniteIndexError(ValueError):
    """Raised when an operation needs an incomplete (infinite-index) core."""


class InfiniteIndexError(ValueError):
    """Raised when an operation needs a complete (finite-index) core."""
