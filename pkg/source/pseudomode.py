import logging
import numpy as np
from dataclasses import dataclass, replace
from .errors import StabilityError, TruncationError
from .physical_params import PhysicalParams
from .coherence_series import CoherenceSeries, time_grid
from .density_matrix import DensityMatrix
from .operators import identity, destroy, pointer_difference, tensor, commutator, anticommutator, dagger
from .utils import LOGGER_NAME, rk4_step


TOP_POPULATION_TOLERANCE = 1e-8
CONVERGENCE_TOLERANCE = 1e-6
INITIAL_FOCK_DIM = 4
DEFAULT_FOCK_CAP = 256
EIGENVALUE_SAMPLES = 20
DEFAULT_STEPS_PER_GUARD = 4


# A single damped bosonic mode reproducing the OU kernel (D / tau_c) exp(-|t| / tau_c) exactly:
# coupling g = sqrt(D / tau_c) and field damping kappa = 2 / tau_c, initialised in the vacuum.
@dataclass(frozen=True)
class PseudomodeConfig:
    g: float
    kappa: float
    fock_dim: int
    params: PhysicalParams

    def __post_init__(self):
        if self.fock_dim < 2:
            raise ValueError(f'Fock dimension must be at least 2 (fock_dim: {self.fock_dim}).')

    def with_fock_dim(self, fock_dim: int):
        return replace(self, fock_dim=fock_dim)

    # Largest RK4 step resolving both the mode relaxation and the system-mode coupling
    def step_guard(self):
        coupling_rate = self.params.a * self.g / self.params.hbar
        shortest = self.params.tau_c if coupling_rate == 0 else min(self.params.tau_c, 1 / coupling_rate)
        return shortest / 50

    # Step used when none is given; at the guard itself RK4 error drives the smallest eigenvalue of rho below -1e-8
    def default_step(self):
        return self.step_guard() / DEFAULT_STEPS_PER_GUARD

    def to_dict(self):
        return {'g': self.g,
                'kappa': self.kappa,
                'fock_dim': self.fock_dim,
                'params': self.params.to_dict()}


# Extremes of the physicality checks over one run
@dataclass
class ConservationReport:
    max_trace_error: float = 0.0
    max_hermiticity_deviation: float = 0.0
    min_eigenvalue: float = 0.0
    max_population_drift: float = 0.0
    max_top_population: float = 0.0
    steps: int = 0

    def record(self, rho: DensityMatrix, initial_populations: np.ndarray):
        self.max_trace_error = max(self.max_trace_error, abs(rho.trace() - 1))
        self.max_hermiticity_deviation = max(self.max_hermiticity_deviation, rho.hermiticity_deviation())
        populations = np.real(np.diag(rho.reduced_system()))
        self.max_population_drift = max(self.max_population_drift, float(np.max(np.abs(populations - initial_populations))))
        self.max_top_population = max(self.max_top_population, rho.top_fock_population())
        self.steps += 1

    def record_eigenvalue(self, rho: DensityMatrix):
        self.min_eigenvalue = min(self.min_eigenvalue, rho.min_eigenvalue())

    def to_dict(self):
        return {'max_trace_error': self.max_trace_error,
                'max_hermiticity_deviation': self.max_hermiticity_deviation,
                'min_eigenvalue': self.min_eigenvalue,
                'max_population_drift': self.max_population_drift,
                'max_top_population': self.max_top_population,
                'steps': self.steps}


def build_pseudomode(params: PhysicalParams, fock_dim: int = INITIAL_FOCK_DIM):
    if params.is_markovian():
        raise ValueError('Markovian bath needs no pseudomode (tau_c = 0).')
    return PseudomodeConfig(float(np.sqrt(params.D / params.tau_c)), 2 / params.tau_c, fock_dim, params)


# H = a g sigma_z (b + b^dagger) and the single jump operator L = sqrt(kappa) b on the mode
def build_generators(config: PseudomodeConfig):
    b = destroy(config.fock_dim)
    H = config.params.a * config.g * tensor(pointer_difference(), b + dagger(b))
    L = np.sqrt(config.kappa) * tensor(identity(2), b)
    return H, L


def make_lindblad_rhs(H: np.ndarray, L: np.ndarray, hbar: float = 1.0):
    if H.shape != L.shape or H.shape[0] != H.shape[1]:
        raise ValueError(f'Generator dimensions disagree (H: {H.shape}, L: {L.shape}).')
    L_dagger = dagger(L)
    L_dagger_L = L_dagger @ L

    def rhs(rho: np.ndarray):
        if rho.shape != H.shape:
            raise ValueError(f'Density matrix dimension {rho.shape} does not match generators {H.shape}.')
        return (-1j / hbar) * commutator(H, rho) + L @ rho @ L_dagger - 0.5 * anticommutator(L_dagger_L, rho)

    return rhs


# d rho / dt = -(i / hbar) [H, rho] + L rho L^dagger - {L^dagger L, rho} / 2
def lindblad_rhs(H: np.ndarray, L: np.ndarray, rho, hbar: float = 1.0):
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return make_lindblad_rhs(H, L, hbar)(matrix)


# Integrates the joint state with RK4 and returns the normalized coherence series with its conservation report.
# With stop_below set, the run ends once |C| drops under that level.
def evolve_with_diagnostics(config: PseudomodeConfig, t_max: float, dt: float, stop_below: float = None):
    guard = config.step_guard()
    if dt > guard * (1 + 1e-12):
        raise StabilityError(f'Step exceeds stability guard (dt: {dt}, limit: {guard}).')
    times = time_grid(t_max, dt)
    H, L = build_generators(config)
    rhs = make_lindblad_rhs(H, L, config.params.hbar)

    rho = DensityMatrix.superposition_vacuum(config.fock_dim)
    initial_coherence = rho.coherence()
    initial_populations = np.real(np.diag(rho.reduced_system()))
    report = ConservationReport()
    report.record(rho, initial_populations)
    report.record_eigenvalue(rho)
    sample_stride = max(1, (len(times) - 1) // EIGENVALUE_SAMPLES)

    coherences = [1.0 + 0j]
    matrix = rho.matrix
    for step in range(1, len(times)):
        matrix = rk4_step(rhs, matrix, dt)
        rho = DensityMatrix(matrix, config.fock_dim)
        report.record(rho, initial_populations)
        if step % sample_stride == 0:
            report.record_eigenvalue(rho)
        coherences.append(rho.coherence() / initial_coherence)
        if stop_below is not None and abs(coherences[-1]) < stop_below:
            break
    return CoherenceSeries(dt, coherences, 'pseudomode'), report


def evolve(config: PseudomodeConfig, t_max: float, dt: float, stop_below: float = None):
    series, report = evolve_with_diagnostics(config, t_max, dt, stop_below)
    if report.max_top_population > TOP_POPULATION_TOLERANCE:
        raise TruncationError(f'Fock truncation not converged (fock_dim: {config.fock_dim}, top population: {report.max_top_population}).')
    return series


# Doubles fock_dim from 4 until the top Fock population stays below 1e-8 and the next doubling moves C by less than 1e-6
def adapt_truncation(config: PseudomodeConfig, t_max: float, dt: float = None, stop_below: float = None,
                     fock_cap: int = DEFAULT_FOCK_CAP):
    logger = logging.getLogger(LOGGER_NAME)
    dt = dt or config.default_step()
    fock_dim = INITIAL_FOCK_DIM
    current, current_report = evolve_with_diagnostics(config.with_fock_dim(fock_dim), t_max, dt, stop_below)
    while True:
        doubled = 2 * fock_dim
        if doubled > fock_cap:
            raise TruncationError(f'Fock truncation runaway; check parameters (cap: {fock_cap}, tau_c: {config.params.tau_c}).')
        candidate, candidate_report = evolve_with_diagnostics(config.with_fock_dim(doubled), t_max, dt, stop_below)
        change = current.max_abs_difference(candidate)
        logger.info(f'Fock dimension {fock_dim} -> {doubled}: top population {current_report.max_top_population:.3e}, change {change:.3e}')
        if current_report.max_top_population < TOP_POPULATION_TOLERANCE and change < CONVERGENCE_TOLERANCE:
            converged = config.with_fock_dim(fock_dim)
            logger.info(f'Converged pseudomode {converged.to_dict()} with diagnostics {current_report.to_dict()}')
            return converged
        fock_dim, current, current_report = doubled, candidate, candidate_report


# Pseudomode coherence at a converged truncation
def simulate(params: PhysicalParams, t_max: float, dt: float = None, stop_below: float = None,
             fock_cap: int = DEFAULT_FOCK_CAP):
    config = build_pseudomode(params)
    dt = dt or config.default_step()
    converged = adapt_truncation(config, t_max, dt, stop_below, fock_cap)
    return evolve(converged, t_max, dt, stop_below)
