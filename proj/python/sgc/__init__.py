"""Deadline-aware bandwidth allocation for two-stream generative transmission."""

from ._sgc import (
    DomainError,
    IoError,
    ParseError,
    QualitySurface,
    ToyDiffusionConfig,
    ValidationError,
    allocate,
    arrival_step,
    db_to_linear,
    deadline_curve,
    default_config_json,
    linear_to_db,
    required_bandwidth,
    sweep,
    threshold_grid,
    transmission_time,
)

__all__ = [
    "DomainError",
    "IoError",
    "ParseError",
    "QualitySurface",
    "ToyDiffusionConfig",
    "ValidationError",
    "allocate",
    "arrival_step",
    "db_to_linear",
    "deadline_curve",
    "default_config_json",
    "linear_to_db",
    "required_bandwidth",
    "sweep",
    "threshold_grid",
    "transmission_time",
]
