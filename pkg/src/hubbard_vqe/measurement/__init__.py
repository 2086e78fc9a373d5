"""Sampled energy estimation over the commuting measurement settings."""

from hubbard_vqe.types import EnergyEstimate, MeasurementConfig

from ._estimate import (
    EnergyEstimator,
    double_occupancy,
    error_detect_filter,
    estimate_energy,
    sampled_double_occupancy,
)
from ._settings import MeasurementSetting, build_measurement_settings

__all__ = [
    "EnergyEstimate",
    "EnergyEstimator",
    "MeasurementConfig",
    "MeasurementSetting",
    "build_measurement_settings",
    "double_occupancy",
    "error_detect_filter",
    "estimate_energy",
    "sampled_double_occupancy",
]
