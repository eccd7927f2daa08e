import numpy as np
from dataclasses import dataclass, field, asdict
from typing import Dict, List
from .decoherence_time import DecoherenceTime


# Least-squares line log y = exponent * log x + intercept, residual is the RMS in log space
@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    intercept: float
    residual: float

    def prefactor(self):
        return float(np.exp(self.intercept))

    def summary(self):
        return f'exponent={self.exponent:.17g} intercept={self.intercept:.17g} residual={self.residual:.17g}'

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SweepRow:
    tau_c: float
    times: Dict[str, DecoherenceTime]


# Decoherence times over an increasing tau_c grid with one power-law fit per method
@dataclass
class SweepResult:
    rows: List[SweepRow]
    methods: List[str]
    fits: Dict[str, PowerLawFit] = field(default_factory=dict)

    def __post_init__(self):
        tau_cs = self.tau_cs()
        if np.any(np.diff(tau_cs) <= 0):
            raise ValueError('Sweep rows must have strictly increasing tau_c.')

    def __str__(self):
        fits = ', '.join(f'{method}: {fit.exponent:.4f}' for method, fit in self.fits.items())
        return f'SweepResult(points: {len(self.rows)}, exponents: ({fits}))'

    def tau_cs(self):
        return np.array([row.tau_c for row in self.rows])

    def tau_decs(self, method: str):
        return np.array([row.times[method].value for row in self.rows])

    # Single-method accessors
    @property
    def exponent(self):
        return self.fits[self.methods[0]].exponent

    @property
    def intercept(self):
        return self.fits[self.methods[0]].intercept

    @property
    def residual(self):
        return self.fits[self.methods[0]].residual

    def csv_header(self):
        return ['tau_c'] + [f'{method}_tau_dec' for method in self.methods]

    def csv_rows(self):
        return [[row.tau_c] + [row.times[method].value for method in self.methods] for row in self.rows]

    def csv_comments(self):
        return [f'method={method} {self.fits[method].summary()}' for method in self.methods]

    def to_dict(self):
        return {'methods': self.methods,
                'rows': [{'tau_c': row.tau_c, 'times': {method: time.to_dict() for method, time in row.times.items()}} for row in self.rows],
                'fits': {method: fit.to_dict() for method, fit in self.fits.items()}}


@dataclass(frozen=True)
class LimitRow:
    tau_c: float
    tau_dec: float
    tau_T: float

    @property
    def ratio(self):
        return self.tau_dec / self.tau_T


# Damped-oscillator decoherence times on a descending tau_c grid approaching the Markovian limit
@dataclass
class LimitStudy:
    rows: List[LimitRow]
    relative_tolerance: float = 0.01

    def ratios(self):
        return np.array([row.ratio for row in self.rows])

    # Relative change between successive ratios
    def relative_changes(self):
        ratios = self.ratios()
        return np.abs(np.diff(ratios)) / np.abs(ratios[1:])

    def converged(self):
        return bool(self.relative_changes()[-1] < self.relative_tolerance)

    def converged_ratio(self):
        return float(self.ratios()[-1])

    # Monotone from the second row onwards
    def is_monotone(self):
        steps = np.diff(self.ratios()[1:])
        return bool(np.all(steps <= 0) or np.all(steps >= 0))

    def csv_header(self):
        return ['tau_c', 'tau_dec', 'tau_T', 'ratio']

    def csv_rows(self):
        return [[row.tau_c, row.tau_dec, row.tau_T, row.ratio] for row in self.rows]

    def csv_comments(self):
        return [f'converged_ratio={self.converged_ratio():.17g} converged={str(self.converged()).lower()} '
                f'(the damped-oscillator slow root tends to 2 a^2 D / hbar^2, so the limit is tau_T / 2 rather than tau_T)']
