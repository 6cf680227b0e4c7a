"""Two-phase THz sensing/SWIPT link simulator and optimizer."""

from ._thziscap import (
    AbsorptionProvider,
    AntennaSpec,
    Atmosphere,
    ChannelSnapshot,
    EnergyHarvestModel,
    FadingModel,
    FeasibleInterval,
    LinkObjectives,
    OptimizationOutcome,
    RegionClass,
    SolveStatus,
    SolverConfig,
    SystemParams,
    achievable_rate,
    capacity,
    grid_oracle_p1,
    grid_oracle_p2,
    harvested_energy,
    load_config,
    maximize_energy_subject_to_rate,
    maximize_rate_subject_to_energy,
    parse_config,
    received_power,
    reflected_power,
    snapshot,
    sweep_csv,
    table1,
    wavelength_m,
)

__all__ = [
    "AbsorptionProvider",
    "AntennaSpec",
    "Atmosphere",
    "ChannelSnapshot",
    "EnergyHarvestModel",
    "FadingModel",
    "FeasibleInterval",
    "LinkObjectives",
    "OptimizationOutcome",
    "RegionClass",
    "SolveStatus",
    "SolverConfig",
    "SystemParams",
    "achievable_rate",
    "capacity",
    "grid_oracle_p1",
    "grid_oracle_p2",
    "harvested_energy",
    "load_config",
    "maximize_energy_subject_to_rate",
    "maximize_rate_subject_to_energy",
    "parse_config",
    "received_power",
    "reflected_power",
    "snapshot",
    "sweep_csv",
    "table1",
    "wavelength_m",
]

__version__ = "0.1.0"
