import json
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, field_validator


# Pydantic model used to validate and coerce the entries of a run configuration file.
# Every field is optional; absent entries fall back to the built-in defaults.
class ConfigFileEntries(BaseModel):
    model_config = ConfigDict(extra='forbid')

    methods: Optional[List[str]] = None
    a: Optional[float] = None
    hbar: Optional[float] = None
    D: Optional[float] = None
    tau_c: Optional[float] = None
    beta: Optional[float] = None
    t_max: Optional[float] = None
    dt: Optional[float] = None
    tau_c_min: Optional[float] = None
    tau_c_max: Optional[float] = None
    points: Optional[int] = None
    tau_c_start: Optional[float] = None
    decades: Optional[int] = None
    threshold: Optional[float] = None
    interpolate: Optional[bool] = None
    fock_cap: Optional[int] = None
    jobs: Optional[int] = None
    out: Optional[str] = None
    preset: Optional[str] = None
    multiplier: Optional[float] = None
    tau_T: Optional[float] = None
    spectrum: Optional[str] = None

    # 'eq16, pseudomode' in flat files
    @field_validator('methods', mode='before')
    @classmethod
    def split_methods(cls, value):
        if isinstance(value, str):
            return [method.strip() for method in value.split(',') if method.strip()]
        return value

    @staticmethod
    def normalize_key(key: str):
        key = key.strip().replace('-', '_')
        return 'tau_T' if key.lower() == 'tau_t' else key

    # Flat 'key = value' lines, '#' starts a comment, no nesting
    @staticmethod
    def parse_flat_text(text: str):
        entries = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ValueError(f'Config line {number} is not of the form key = value: {line}')
            key, value = line.split('=', 1)
            key = ConfigFileEntries.normalize_key(key)
            if key in entries:
                raise ValueError(f'Config key repeated on line {number}: {key}')
            entries[key] = value.strip()
        return entries

    @staticmethod
    def from_path(config_path: str):
        with open(config_path, 'r') as file:
            text = file.read()
        if config_path.endswith('.json'):
            raw = {ConfigFileEntries.normalize_key(key): value for key, value in json.loads(text).items()}
        else:
            raw = ConfigFileEntries.parse_flat_text(text)
        return ConfigFileEntries.model_validate(raw)

    def entries(self) -> Dict:
        return self.model_dump(exclude_none=True)
