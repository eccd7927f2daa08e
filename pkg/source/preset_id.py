import numpy as np
from enum import Enum, unique
from dataclasses import dataclass, asdict
from typing import List
from rapidfuzz import process


WATER_TAU_C_LOW = 1e-14 # seconds, librational timescale of liquid water
WATER_TAU_C_HIGH = 1e-13
DEFAULT_MICROTUBULE_MULTIPLIER = 1e3


@unique
class PresetID(Enum):
    WATER = 'water'
    MICROTUBULE = 'microtubule'
    CUSTOM = 'custom'

    @staticmethod
    def supported_presets():
        return [member.value for member in PresetID]

    @staticmethod
    def from_name(name: str):
        normalized = name.strip().lower()
        if normalized in PresetID.supported_presets():
            return PresetID(normalized)
        suggestion, _, _ = process.extractOne(normalized, PresetID.supported_presets())
        raise ValueError(f'Unknown preset: {name} (did you mean {suggestion}?). Supported presets: {", ".join(PresetID.supported_presets())}.')

    def display_name(self):
        return self.value.title()

    def preset(self, multiplier: float = DEFAULT_MICROTUBULE_MULTIPLIER, tau_c_min: float = None, tau_c_max: float = None):
        match self:
            case PresetID.WATER:
                return BioPreset(self.value, WATER_TAU_C_LOW, WATER_TAU_C_HIGH, 'Liquid water librations')
            case PresetID.MICROTUBULE:
                if not multiplier > 0:
                    raise ValueError(f'Microtubule multiplier must be positive (multiplier: {multiplier}).')
                # No measured value exists; the multiplier over water is an explicit user assumption
                return BioPreset(self.value, multiplier * WATER_TAU_C_LOW, multiplier * WATER_TAU_C_HIGH,
                                 f'Ordered water near microtubules, water x {multiplier:g}', True)
            case PresetID.CUSTOM:
                if tau_c_min is None or tau_c_max is None:
                    raise ValueError('Custom preset needs --tau-c-min and --tau-c-max (seconds).')
                return BioPreset(self.value, tau_c_min, tau_c_max, 'User-supplied correlation times')
            case _:
                raise NotImplementedError(f'Preset not implemented: {self}.')


# Range of bath correlation times in seconds
@dataclass(frozen=True)
class BioPreset:
    name: str
    tau_c_low: float
    tau_c_high: float
    description: str
    assumption: bool = False

    def __post_init__(self):
        if not 0 < self.tau_c_low <= self.tau_c_high:
            raise ValueError(f'Preset correlation times must satisfy 0 < low <= high (low: {self.tau_c_low}, high: {self.tau_c_high}).')

    def __str__(self):
        flag = ' [assumption]' if self.assumption else ''
        return f'{self.name}: tau_c in [{self.tau_c_low:g}, {self.tau_c_high:g}] s, {self.description}{flag}'

    # Scaling-law decoherence time and enhancement tau_dec / tau_T = sqrt(tau_c / tau_T) at both bounds.
    # With tau_T = hbar^2 / (a^2 D), sqrt(tau_c tau_T) equals sqrt(hbar^2 tau_c / (a^2 D)).
    def estimates(self, tau_T: float):
        if not tau_T > 0:
            raise ValueError(f'Tegmark time must be positive (tau_T: {tau_T}).')
        return [PresetEstimate(bound, tau_c, tau_T, float(np.sqrt(tau_c * tau_T)), float(np.sqrt(tau_c / tau_T)))
                for bound, tau_c in (('low', self.tau_c_low), ('high', self.tau_c_high))]

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class PresetEstimate:
    bound: str
    tau_c: float
    tau_T: float
    tau_dec: float
    enhancement: float

    def to_row(self):
        return [self.tau_c, self.tau_T, self.tau_dec, self.enhancement]


def format_preset_table(preset: BioPreset, estimates: List[PresetEstimate]):
    lines = [str(preset), f'{"bound":<6} {"tau_c [s]":>12} {"tau_T [s]":>12} {"tau_dec [s]":>12} {"tau_dec/tau_T":>14}']
    for estimate in estimates:
        lines.append(f'{estimate.bound:<6} {estimate.tau_c:>12.4e} {estimate.tau_T:>12.4e} {estimate.tau_dec:>12.4e} {estimate.enhancement:>14.4g}')
    if preset.assumption:
        lines.append('note: correlation times are an assumed multiple of the water values')
    return '\n'.join(lines)
