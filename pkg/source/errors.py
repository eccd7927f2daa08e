# Numerical failures are reported separately from argument and configuration errors (ValueError),
# so the command line can map them to distinct exit codes.
class NumericalError(RuntimeError):
    pass


# No threshold crossing inside the sampled time grid
class HorizonExceededError(NumericalError):
    pass


# Fixed step is too large for the integrator's stability guard
class StabilityError(NumericalError):
    pass


# Pseudomode Fock truncation failed to converge below the dimension cap
class TruncationError(NumericalError):
    pass


# Quadrature diverges (e.g. infrared pole of a tabulated spectral density)
class DivergenceError(NumericalError):
    pass
