"""Exception types shared across the toolkit."""


class InputError(ValueError):
    """Malformed or out-of-domain input: wrong shapes, bad ranges, parse failures."""


class ValidationError(Exception):
    """A structural invariant failed (tensor symmetries, schema conflicts).

    Carries the worst residual and the offending 1-based index tuples when known.
    """

    def __init__(self, message, max_residual=None, indices=None):
        super().__init__(message)
        self.max_residual = max_residual
        self.indices = indices


class PreconditionError(Exception):
    """Input is well formed but outside the hypothesis of the requested check."""


class NumericalError(Exception):
    """A numerical routine failed to meet its accuracy contract."""
