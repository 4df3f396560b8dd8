"""Exception hierarchy shared by all modules.

Every rejection of malformed algebraic input derives from :class:`ValidationError`
so callers (the CLI in particular) can map it to a single exit status.
"""


class ValidationError(ValueError):
    """Input data violates an axiom; ``witness`` names the offending data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TruncationExceeded(ValueError):
    pass


class LevelOutOfRange(ValueError):
    pass
