"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input failed a structural check (non-unit quaternion, bad SO(4) matrix)."""


class WordParseError(ValueError):
    """A clutching-word string could not be parsed."""


class ManifoldInputError(ValueError):
    """A manifold record (file or constructor input) is malformed."""


class ObstructionError(ValueError):
    """The lift-degree system has no integral solution for the given data."""


class NumericalFailure(RuntimeError):
    """Base class for failures of the numerical methods (CLI exit code 2)."""


class DecompositionError(NumericalFailure):
    """Isoclinic factorization did not reproduce the input matrix within tolerance."""


class GridCoarseError(NumericalFailure):
    """Sign propagation rejected the sample grid: adjacent lift values too far apart."""


class ResolutionError(NumericalFailure):
    """A degree estimate landed too far from every integer to be rounded."""


class NonRegularValueError(NumericalFailure):
    """A preimage of the target value has a near-singular Jacobian."""


class MethodDisagreementError(NumericalFailure):
    """Two independent degree estimators returned different integers."""
