class CILatticeError(Exception):
    """Base class for all errors raised by cilattice."""


class InvalidArgumentError(CILatticeError, ValueError):
    pass


class NumericDegeneracyError(CILatticeError, ArithmeticError):
    pass


class InsufficientSamplesError(CILatticeError, ValueError):
    pass


class UnsupportedQueryError(CILatticeError, ValueError):
    pass


class TooLargeError(CILatticeError, ValueError):
    pass


class GenerationFailureError(CILatticeError, RuntimeError):
    pass


class NonGraphoidError(CILatticeError):
    """The oracle violates a structural property every compositional graphoid has."""


class DecompositionInconsistencyError(NonGraphoidError):
    """Two computed lattices overlap, so the oracle answers are inconsistent."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
