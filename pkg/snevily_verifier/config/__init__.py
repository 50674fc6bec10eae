"""
Configuration management for the Snevily verifier.
"""

from .settings import Settings, RunConfig, BudgetSettings, SweepSettings, OutputSettings, load_config

__all__ = ['Settings', 'RunConfig', 'BudgetSettings', 'SweepSettings', 'OutputSettings', 'load_config']
