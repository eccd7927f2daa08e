import numpy as np
from dataclasses import dataclass, asdict
from .errors import HorizonExceededError
from .coherence_series import CoherenceSeries


DEFAULT_THRESHOLD = float(np.exp(-1))


# Time at which |C| first falls to the threshold
@dataclass(frozen=True)
class DecoherenceTime:
    value: float
    method: str
    interpolated: bool = True
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f'Decoherence time must be positive (value: {self.value}, method: {self.method}).')
        validate_threshold(self.threshold)

    def __str__(self):
        return f'DecoherenceTime({self.method}: {self.value}, threshold: {self.threshold}, interpolated: {self.interpolated})'

    def to_dict(self):
        return asdict(self)


def validate_threshold(threshold: float):
    if not 0 < threshold < 1:
        raise ValueError(f'Threshold must lie strictly between 0 and 1 (threshold: {threshold}).')


# First grid time with |C| <= threshold. With interpolate, |C| is linearly interpolated between the
# bracketing samples, so the result lies within one step below the grid-point value.
def extract_tau_dec(series: CoherenceSeries, threshold: float = DEFAULT_THRESHOLD, interpolate: bool = True):
    validate_threshold(threshold)
    magnitudes = series.magnitudes()
    crossings = np.flatnonzero(magnitudes <= threshold)
    if crossings.size == 0:
        raise HorizonExceededError(f'Horizon exceeded; extend t_max (method: {series.label}, t_max: {series.t_max()}, min |C|: {magnitudes.min()}).')
    index = int(crossings[0])
    if not interpolate:
        return DecoherenceTime(index * series.dt, series.label, False, threshold)
    above, below = magnitudes[index - 1], magnitudes[index]
    fraction = (above - threshold) / (above - below)
    return DecoherenceTime((index - 1 + fraction) * series.dt, series.label, True, threshold)
