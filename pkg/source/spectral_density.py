import numpy as np
from enum import Enum, unique
from dataclasses import dataclass
from typing import Tuple, List
from scipy.integrate import quad, trapezoid
from .errors import DivergenceError
from .physical_params import PhysicalParams


@unique
class SpectralForm(Enum):
    LORENTZIAN_OU = 'lorentzian_ou'
    TABULATED = 'tabulated'


# Frequency-domain description of the bath.
# LorentzianOU carries the effective classical noise power S(omega) = 2 D / (1 + omega^2 tau_c^2),
# the exact Fourier pair of the OU kernel. Tabulated carries samples (omega, J(omega)).
@dataclass(frozen=True)
class SpectralDensity:
    form: SpectralForm
    D: float = None
    tau_c: float = None
    omegas: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()

    cutoff_factor = 1e3
    quadrature_rtol = 1e-9
    max_refinement_level = 20
    infrared_exponent_floor = 0.5

    @staticmethod
    def lorentzian_ou(D: float, tau_c: float):
        return SpectralDensity(SpectralForm.LORENTZIAN_OU, D=D, tau_c=tau_c)

    @staticmethod
    def tabulated(omegas: List[float], values: List[float]):
        return SpectralDensity(SpectralForm.TABULATED,
                               omegas=tuple(float(omega) for omega in omegas),
                               values=tuple(float(value) for value in values))

    # Two-column plain text (omega, J), whitespace separated, '#' comments
    @staticmethod
    def from_path(path: str):
        table = np.loadtxt(path, comments='#', ndmin=2)
        if table.shape[1] != 2:
            raise ValueError(f'Spectral density file must have exactly two columns (path: {path}).')
        return SpectralDensity.tabulated(table[:, 0], table[:, 1])

    def __post_init__(self):
        error_message = self.validate_with_error_message()
        if error_message:
            raise ValueError(error_message)

    def validate_with_error_message(self):
        match self.form:
            case SpectralForm.LORENTZIAN_OU:
                if self.D is None or self.D < 0:
                    return f'Lorentzian spectrum needs a non-negative noise strength (D: {self.D}).'
                if self.tau_c is None or not self.tau_c > 0:
                    return f'Lorentzian spectrum needs a positive correlation time (tau_c: {self.tau_c}).'
            case SpectralForm.TABULATED:
                if len(self.omegas) < 2 or len(self.omegas) != len(self.values):
                    return 'Tabulated spectrum needs at least two (omega, J) samples of matching length.'
                if np.any(np.diff(self.omegas) <= 0):
                    return 'Tabulated omega samples must be strictly increasing.'
                if self.omegas[0] < 0:
                    return 'Tabulated omega samples must be non-negative.'
                if np.any(np.asarray(self.values) < 0):
                    return 'Tabulated J(omega) samples must be non-negative.'
        return None

    def noise_power(self, omega):
        if self.form != SpectralForm.LORENTZIAN_OU:
            raise ValueError('Noise power is defined only for the Lorentzian OU spectrum.')
        omega = np.asarray(omega, dtype=float)
        return 2 * self.D / (1 + (omega * self.tau_c) ** 2)

    # Tabulated J must fall off at least like omega^(1/2) towards the origin for the thermal weight
    # coth(beta omega / 2) ~ 2 / (beta omega) to stay integrable; the local exponent is read from the two lowest samples.
    def vanishes_at_origin(self):
        if self.form != SpectralForm.TABULATED:
            return True
        (first_omega, second_omega), (first, second) = self.omegas[:2], self.values[:2]
        if first == 0:
            return True
        if first_omega == 0 or second <= 0:
            return False
        exponent = np.log(second / first) / np.log(second_omega / first_omega)
        return bool(exponent >= SpectralDensity.infrared_exponent_floor)

    # Short-time decoherence rate Gamma = (a^2 / hbar^2) alpha_sym(0) in 1 / time^2
    def gamma_rate(self, params: PhysicalParams):
        match self.form:
            case SpectralForm.LORENTZIAN_OU:
                integral = self._lorentzian_integral() / np.pi
            case SpectralForm.TABULATED:
                integral = self._tabulated_integral(params.beta)
            case _:
                raise NotImplementedError(f'Rate integral not implemented for form: {self.form}.')
        return params.coupling_scale() * integral

    # Fourier transform of S(omega) back to the time domain: alpha(dt) = (1 / pi) int_0^inf S(omega) cos(omega dt) d omega
    def kernel_roundtrip(self, dt_grid: List[float]):
        if self.form != SpectralForm.LORENTZIAN_OU:
            raise ValueError('Kernel round trip is defined only for the Lorentzian OU spectrum.')
        kernel = []
        for dt in dt_grid:
            if self.D == 0:
                kernel.append(0.0)
                continue
            if dt == 0:
                integral, _ = quad(self.noise_power, 0, np.inf, epsabs=1e-12, epsrel=1e-10)
            else:
                integral, _ = quad(self.noise_power, 0, np.inf, weight='cos', wvar=abs(dt), epsabs=1e-12)
            kernel.append(integral / np.pi)
        return kernel

    # Composite trapezoid in log(omega) up to omega_max = 1e3 / tau_c, refined by interval doubling,
    # plus the omega^-2 tail beyond the cutoff.
    def _lorentzian_integral(self):
        if self.D == 0:
            return 0.0
        omega_min = 1e-6 / self.tau_c
        omega_max = SpectralDensity.cutoff_factor / self.tau_c

        def integrate(point_count: int):
            omegas = np.geomspace(omega_min, omega_max, point_count)
            body = trapezoid(self.noise_power(omegas) * omegas, x=np.log(omegas))
            head = self.noise_power(0.0) * omega_min
            tail = self.noise_power(omega_max) * omega_max
            return float(body + head + tail)

        return _refine_by_doubling(integrate, 'Lorentzian rate integral')

    # int J(omega) coth(beta omega / 2) d omega over the sample support, linear interpolation of J,
    # each sample interval split 2^level times until the relative change settles.
    def _tabulated_integral(self, beta: float):
        omegas = np.asarray(self.omegas)
        values = np.asarray(self.values)
        if beta is not None and not self.vanishes_at_origin():
            raise DivergenceError(f'Infrared-divergent spectral density: J(omega) must vanish at omega -> 0 when beta is set '
                                  f'(lowest samples: J({omegas[0]}) = {values[0]}, J({omegas[1]}) = {values[1]}).')
        # Below the first sample J rises linearly from zero
        if omegas[0] > 0:
            omegas = np.concatenate([[0.0], omegas])
            values = np.concatenate([[0.0], values])
        origin_slope = (values[1] - values[0]) / (omegas[1] - omegas[0])

        def integrand(grid: np.ndarray):
            spectrum = np.interp(grid, omegas, values)
            if beta is None:
                return spectrum
            weighted = np.empty_like(grid)
            positive = grid > 0
            weighted[positive] = spectrum[positive] / np.tanh(beta * grid[positive] / 2)
            # J coth(beta omega / 2) -> 2 J'(0) / beta at the origin
            weighted[~positive] = 2 * origin_slope / beta
            return weighted

        def integrate(point_count: int):
            subdivisions = max(1, (point_count - 1) // (len(omegas) - 1))
            pieces = [np.linspace(omegas[index], omegas[index + 1], subdivisions + 1)[:-1] for index in range(len(omegas) - 1)]
            grid = np.concatenate(pieces + [omegas[-1:]])
            return float(trapezoid(integrand(grid), x=grid))

        return _refine_by_doubling(integrate, 'tabulated rate integral', start=len(omegas))


def _refine_by_doubling(integrate, description: str, start: int = 65):
    point_count = start
    previous = integrate(point_count)
    for _ in range(SpectralDensity.max_refinement_level):
        point_count = 2 * (point_count - 1) + 1
        current = integrate(point_count)
        if not np.isfinite(current):
            raise DivergenceError(f'Non-finite value in {description}.')
        if abs(current - previous) <= SpectralDensity.quadrature_rtol * max(abs(current), 1e-300):
            return current
        previous = current
    return previous
