import os
from typing import Dict
from .config_file import ConfigFileEntries
from .decoherence_time import DEFAULT_THRESHOLD
from .method_id import MethodID
from .physical_params import PhysicalParams
from .preset_id import DEFAULT_MICROTUBULE_MULTIPLIER
from .pseudomode import DEFAULT_FOCK_CAP, INITIAL_FOCK_DIM
from .spectral_density import SpectralDensity


class RunConfig:
    default_file_name = 'config.conf'
    # Dimensionless units hbar = a = D = 1 unless overridden
    defaults = {'methods': ['eq16'],
                'a': 1.0,
                'hbar': 1.0,
                'D': 1.0,
                'tau_c': 1.0,
                'beta': None,
                't_max': 5.0,
                'dt': 0.01,
                'tau_c_min': 10.0,
                'tau_c_max': 1000.0,
                'points': 8,
                'tau_c_start': 0.1,
                'decades': 4,
                'threshold': DEFAULT_THRESHOLD,
                'interpolate': True,
                'fock_cap': DEFAULT_FOCK_CAP,
                'jobs': None,
                'out': None,
                'preset': 'water',
                'multiplier': DEFAULT_MICROTUBULE_MULTIPLIER,
                'tau_T': None,
                'spectrum': None}

    @staticmethod
    def load_config_file(config_path: str = None):
        config_path = config_path or RunConfig.default_file_name
        return ConfigFileEntries.from_path(config_path).entries()

    # Built-in defaults < config file < command-line flags; config.conf in the working directory stands in for a missing path
    @staticmethod
    def from_sources(config_path: str = None, overrides: Dict = None):
        if config_path or os.path.exists(RunConfig.default_file_name):
            file_entries = RunConfig.load_config_file(config_path)
        else:
            file_entries = {}
        flag_entries = ConfigFileEntries.model_validate(overrides or {}).entries()
        return RunConfig({**file_entries, **flag_entries})

    # Built-in defaults only, never reads a file
    @staticmethod
    def from_default(overrides: Dict = None):
        return RunConfig(ConfigFileEntries.model_validate(overrides or {}).entries())

    def __init__(self, config_file: Dict):
        unknown = set(config_file) - set(RunConfig.defaults)
        if unknown:
            raise ValueError(f'Unknown config keys: {", ".join(sorted(unknown))}.')
        self.explicit_keys = set(config_file)
        for key, value in {**RunConfig.defaults, **config_file}.items():
            setattr(self, key, value)
        self.jobs = self.jobs or os.cpu_count() or 1
        self.validate()

    def validate(self):
        error_message = self.validate_with_error_message()
        if error_message:
            raise ValueError(error_message)

    def validate_with_error_message(self):
        try:
            self.physical_params()
        except ValueError as error:
            return str(error)
        if not self.methods:
            return 'At least one method must be provided.'
        if not self.dt > 0:
            return f'Time step must be positive (dt: {self.dt}).'
        if not self.t_max >= self.dt:
            return f'Horizon must cover at least one step (t_max: {self.t_max}, dt: {self.dt}).'
        if not 0 < self.threshold < 1:
            return f'Threshold must lie strictly between 0 and 1 (threshold: {self.threshold}).'
        if self.fock_cap < INITIAL_FOCK_DIM:
            return f'Fock cap must be at least {INITIAL_FOCK_DIM} (fock_cap: {self.fock_cap}).'
        if self.jobs < 1:
            return f'Worker count must be positive (jobs: {self.jobs}).'
        if self.tau_T is not None and not self.tau_T > 0:
            return f'Tegmark time must be positive (tau_T: {self.tau_T}).'
        return None

    def physical_params(self):
        return PhysicalParams(self.a, self.hbar, self.D, self.tau_c, self.beta)

    # Tabulated spectrum named by the spectrum key, None when unset
    def spectral_density(self):
        return SpectralDensity.from_path(self.spectrum) if self.spectrum else None

    def method_ids(self, allowed: list = None):
        methods = [MethodID.from_tag(tag, allowed) for tag in self.methods]
        if len(set(methods)) != len(methods):
            raise ValueError(f'Methods must be distinct (methods: {", ".join(self.methods)}).')
        return methods

    def is_explicit(self, key: str):
        return key in self.explicit_keys

    def to_dict(self):
        return {key: getattr(self, key) for key in RunConfig.defaults}

    # Flat key = value file with the resolved values, readable by from_sources
    def save(self, config_path: str):
        lines = ['# Resolved run configuration']
        for key, value in self.to_dict().items():
            if value is None:
                continue
            if key == 'methods':
                value = ', '.join(value)
            elif isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, float):
                value = repr(value)
            lines.append(f'{key} = {value}')
        with open(config_path, 'w') as file:
            file.write('\n'.join(lines) + '\n')
