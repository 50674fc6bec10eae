"""
Configuration for the Snevily verifier.

Settings are grouped into budgets, sweep bounds and output options. A JSON
file may override any subset of keys; everything it leaves out keeps the
defaults below.
"""

import dataclasses
import json
import logging
import os
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Any, Dict, Optional

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass
class BudgetSettings:
    """Enumeration budgets"""
    max_permutation_k: int = 8
    max_subsets: int = 1_000_000
    max_specialization_attempts: int = 64


@dataclass
class SweepSettings:
    """Default bounds of the acceptance sweeps"""
    seed: int = 0
    random_instances: int = 500
    identity_trials: int = 100
    oracle_instances: int = 200
    fourier_trials: int = 100
    characters_max_m: int = 36
    theorem1_max_m: int = 9
    theorem1_max_k: int = 3
    theorem1_random_max_m: int = 36
    theorem1_random_max_k: int = 5
    oracle_max_m: int = 16
    oracle_max_k: int = 4
    lemma4_max_m: int = 15
    lemma4_max_k: int = 4
    theorem3_max_k: int = 3
    theorem3_random_max_m: int = 81
    theorem3_random_max_k: int = 5
    identities_max_m: int = 9
    identities_max_k: int = 3


@dataclass
class OutputSettings:
    """Where saved witnesses and reports go"""
    base_directory: str = "outputs"
    include_timestamps: bool = False


@dataclass
class Settings:
    budgets: BudgetSettings = dataclasses.field(default_factory=BudgetSettings)
    sweeps: SweepSettings = dataclasses.field(default_factory=SweepSettings)
    output: OutputSettings = dataclasses.field(default_factory=OutputSettings)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Settings':
        """Build settings from a possibly partial dictionary"""
        return cls(
            budgets=BudgetSettings(**data.get("budgets", {})),
            sweeps=SweepSettings(**data.get("sweeps", {})),
            output=OutputSettings(**data.get("output", {})),
        )

    def save_to_file(self, filepath: str) -> None:
        with open(filepath, 'w') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)

    @classmethod
    def load_from_file(cls, filepath: str) -> 'Settings':
        with open(filepath) as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError("settings file must hold a JSON object")
        return cls.from_dict(data)


@dataclass
class RunConfig:
    """Everything a single CLI invocation needs, as parsed from the command line"""
    group: Optional[str] = None
    field: Optional[str] = None
    set_a: Optional[str] = None
    set_b: Optional[str] = None
    chars_x: Optional[str] = None
    chars_psi: Optional[str] = None
    seed: int = 0
    budgets: BudgetSettings = dataclasses.field(default_factory=BudgetSettings)
    output_format: str = "text"

    OUTPUT_FORMATS = ("text", "json", "csv")

    def validate(self) -> 'RunConfig':
        """Reject values no run can use"""
        for name, value in asdict(self.budgets).items():
            if value <= 0:
                raise ConfigurationError(f"{name} must be positive, got {value}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.output_format not in self.OUTPUT_FORMATS:
            raise ConfigurationError(f"unknown output format: {self.output_format}")
        return self


def default_config_path() -> Path:
    """~/.config/snevily_verifier/config.json, or under APPDATA on Windows"""
    if os.name == 'nt':
        base = Path(os.environ.get('APPDATA', '')) / 'SnevilyVerifier'
    else:
        base = Path.home() / '.config' / 'snevily_verifier'
    return base / 'config.json'


def load_config(config_file: Optional[str] = None) -> Settings:
    """Settings from config_file (or the default path); defaults if it is absent or unreadable"""
    path = Path(config_file) if config_file else default_config_path()
    if not path.exists():
        logger.debug("no settings file at %s, using defaults", path)
        return Settings()
    try:
        return Settings.load_from_file(str(path))
    except (OSError, ValueError, TypeError) as e:
        logger.warning("Failed to load config from %s: %s; using default settings", path, e)
        return Settings()
