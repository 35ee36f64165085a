class XTeleError(Exception):
    """Base class of every error raised by xtele

    The class name doubles as the machine-readable reason token printed by the command line.
    """

    @property
    def reason(self) -> str:
        return type(self).__name__


class InvalidType(XTeleError, TypeError):
    """Raises when an invalid data type is passed
    """
    pass


class NotHermitian(XTeleError, ValueError):
    """Raises when a matrix deviates from its adjoint by more than the hermiticity tolerance
    """
    pass


class InvalidDensity(XTeleError, ValueError):
    """Raises when a matrix is not a valid density matrix (trace, positivity or hermiticity)
    """
    pass


class NonUnitTrace(InvalidDensity):
    """Raises when the populations of an X state do not sum to one
    """
    pass


class NegativePopulation(InvalidDensity):
    """Raises when a diagonal entry of an X state is negative beyond tolerance
    """
    pass


class CoherenceBoundViolated(InvalidDensity):
    """Raises when |w|^2 > ad or |z|^2 > bc
    """
    pass


class BadSubsystemSpec(XTeleError, ValueError):
    """Raises when the qubits to trace out cannot be applied to the given matrix
    """
    pass


class ParamOutOfRange(XTeleError, ValueError):
    """Raises when a family parameter lies outside its admissible interval
    """
    pass


class NotXState(XTeleError, ValueError):
    """Raises when an X-state closed form is asked for a dense state with entries off the two diagonals
    """
    pass


class NonUnitaryCorrection(XTeleError, ValueError):
    """Raises when a correction matrix is not unitary
    """
    pass


class StateFileError(XTeleError, ValueError):
    """Raises when a state file cannot be parsed
    """
    pass
