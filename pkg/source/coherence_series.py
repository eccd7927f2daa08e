import numpy as np
from dataclasses import dataclass


# Uniform sample times 0, dt, 2 dt, ... up to t_max (inclusive within rounding)
def time_grid(t_max: float, dt: float):
    if not dt > 0:
        raise ValueError(f'Time step must be positive (dt: {dt}).')
    if t_max < dt:
        raise ValueError(f'Horizon must cover at least one step (t_max: {t_max}, dt: {dt}).')
    step_count = int(round(t_max / dt))
    return dt * np.arange(step_count + 1)


# Off-diagonal coherence C(t) = <L|rho(t)|R>, normalized so that C(0) = 1
@dataclass
class CoherenceSeries:
    dt: float
    values: np.ndarray # complex
    label: str

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if not self.dt > 0:
            raise ValueError(f'Coherence series needs a positive time step (dt: {self.dt}).')
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError(f'Coherence series must be a non-empty one-dimensional array (label: {self.label}).')
        if abs(self.values[0] - 1) > 1e-9:
            raise ValueError(f'Coherence series must start at C(0) = 1 (label: {self.label}, C(0): {self.values[0]}).')

    def __len__(self):
        return self.values.size

    def __str__(self):
        return f'CoherenceSeries(label: {self.label}, samples: {len(self)}, dt: {self.dt})'

    def times(self):
        return self.dt * np.arange(len(self))

    def magnitudes(self):
        return np.abs(self.values)

    def t_max(self):
        return self.dt * (len(self) - 1)

    # Maximum |C| difference against another series on the shared prefix of the grid
    def max_abs_difference(self, other: 'CoherenceSeries'):
        if not np.isclose(self.dt, other.dt, rtol=1e-12, atol=0):
            raise ValueError(f'Series must share a time step to be compared ({self.dt} != {other.dt}).')
        shared = min(len(self), len(other))
        return float(np.max(np.abs(self.values[:shared] - other.values[:shared])))
