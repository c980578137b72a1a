"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates an operation's precondition (CLI exit status 2)."""


class InternalInconsistencyError(RuntimeError):
    """A computed quantity contradicts a mathematical guarantee (CLI exit status 1)."""
