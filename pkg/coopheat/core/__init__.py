"""
Core module for coopheat
Contains the error hierarchy, settings, command base classes, the runner and the facade.
"""

from .errors import CoopHeatError
from .settings import Settings, get_settings
from .base import BaseCommand, CommandRegistry, RunConfig, SweepAxis, SweepTable
from .runner import SimulationRunner
from .machine import CoopHeat

__all__ = [
    "CoopHeatError",
    "Settings",
    "get_settings",
    "BaseCommand",
    "CommandRegistry",
    "RunConfig",
    "SweepAxis",
    "SweepTable",
    "SimulationRunner",
    "CoopHeat",
]
