import numpy as np
from enum import Enum, unique
from rapidfuzz import process
from .analytic import tegmark_decay, quadratic_law, dephasing_oracle
from .nmqsd import integrate_volterra
from .oscillator_solution import OscillatorSolution
from .physical_params import PhysicalParams
from .pseudomode import build_pseudomode, simulate, DEFAULT_FOCK_CAP
from .spectral_density import SpectralDensity


@unique
class MethodID(Enum):
    TEGMARK = 'tegmark'
    QUADRATIC = 'quadratic'
    EQ16 = 'eq16'
    NMQSD = 'nmqsd'
    PSEUDOMODE = 'pseudomode'
    ORACLE = 'oracle'
    FORMULA = 'formula' # closed-form decoherence time only, no coherence series

    @staticmethod
    def supported_methods():
        return [member.value for member in MethodID]

    @staticmethod
    def decay_methods():
        return [member.value for member in MethodID if member.has_series()]

    # Unknown tags are rejected with the closest supported tag as a suggestion
    @staticmethod
    def from_tag(tag: str, allowed: list = None):
        allowed = allowed or MethodID.supported_methods()
        normalized = tag.strip().lower()
        if normalized in allowed:
            return MethodID(normalized)
        suggestion, _, _ = process.extractOne(normalized, allowed)
        raise ValueError(f'Unknown method: {tag} (did you mean {suggestion}?). Supported methods: {", ".join(allowed)}.')

    def display_name(self):
        match self:
            case MethodID.EQ16:
                return 'Damped oscillator'
            case MethodID.NMQSD:
                return 'NMQSD Volterra'
            case _:
                return self.value.capitalize()

    def has_series(self):
        return self != MethodID.FORMULA

    def needs_memory(self):
        return self != MethodID.TEGMARK

    # Largest fixed step a sweep uses for this method at the given parameters
    def step_guard(self, params: PhysicalParams):
        match self:
            case MethodID.NMQSD:
                return params.tau_c / 20
            case MethodID.PSEUDOMODE:
                return build_pseudomode(params).default_step()
            case _:
                return np.inf

    # Coherence series on [0, t_max] with fixed step dt; pseudomode runs may end early once |C| < stop_below.
    # The quadratic law takes its rate from spectrum when given, else from the Lorentzian OU spectrum of params.
    def generate(self, params: PhysicalParams, t_max: float, dt: float, fock_cap: int = DEFAULT_FOCK_CAP,
                 stop_below: float = None, spectrum: SpectralDensity = None):
        if self.needs_memory() and params.is_markovian():
            raise ValueError(f'Method {self.value} needs a finite correlation time (tau_c > 0).')
        match self:
            case MethodID.TEGMARK:
                return tegmark_decay(params, t_max, dt)
            case MethodID.QUADRATIC:
                spectrum = spectrum or SpectralDensity.lorentzian_ou(params.D, params.tau_c)
                gamma = spectrum.gamma_rate(params)
                return quadratic_law(gamma, t_max, dt)
            case MethodID.EQ16:
                return OscillatorSolution.from_params(params).evaluate(t_max, dt)
            case MethodID.NMQSD:
                return integrate_volterra(params, t_max, dt)
            case MethodID.PSEUDOMODE:
                return simulate(params, t_max, dt, stop_below, fock_cap)
            case MethodID.ORACLE:
                return dephasing_oracle(params, t_max, dt)
            case _:
                raise NotImplementedError(f'Coherence series not implemented for method: {self}.')
