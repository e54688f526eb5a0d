from .footfall import (
    SLOT_COUNT,
    FootfallModel,
    default_hourly_means,
    gen_footfall,
    ingest_footfall,
    slot_labels,
    write_footfall_csv,
)
from .population import (
    IDENTICAL,
    RANDOM,
    REGIMES,
    AgentSpec,
    ValuationModel,
    build_instance,
    gen_population,
    valuations_from_spec,
)
from .simulation import DaySim, EscalationRules, proximity_order, simulate_days

__all__ = [
    "AgentSpec",
    "DaySim",
    "EscalationRules",
    "FootfallModel",
    "IDENTICAL",
    "RANDOM",
    "REGIMES",
    "SLOT_COUNT",
    "ValuationModel",
    "build_instance",
    "default_hourly_means",
    "gen_footfall",
    "gen_population",
    "ingest_footfall",
    "proximity_order",
    "simulate_days",
    "slot_labels",
    "valuations_from_spec",
    "write_footfall_csv",
]
