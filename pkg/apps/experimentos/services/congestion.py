# apps/experimentos/services/congestion.py
"""
Reducción de congestión: la tienda sin agendamiento (llegadas tal cual)
frente a la simulación de varios días con capacidad k por bloque.

Todas las capacidades usan la misma secuencia de llegadas y la misma
semilla de urgencias, para que sus resultados sean comparables.
"""
import logging
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np
from rest_framework.renderers import JSONRenderer

from apps.agenda.utils import atomic_write_bytes
from apps.experimentos.metrics import congestion_profile
from apps.experimentos.simgen import (
    SLOT_COUNT,
    EscalationRules,
    FootfallModel,
    ValuationModel,
    gen_footfall,
    ingest_footfall,
    simulate_days,
    slot_labels,
    write_footfall_csv,
)
from apps.experimentos.simgen.footfall import RUSH_HOURS

from .config import ExperimentConfig
from .output import write_csv
from .seeds import trial_rng

logger = logging.getLogger(__name__)

EXPORT_START = date(2020, 7, 1)
_ARRIVALS_KEY = 0
_URGENCY_KEY = 1


@dataclass(frozen=True)
class CongestionResult:
    capacity: int
    baseline: Mapping[str, float]
    allocated: Mapping[str, float]
    dropped: Mapping[str, int]
    days: int
    drain_days: int

    @property
    def total_dropped(self) -> int:
        return sum(self.dropped.values())

    def rush_reduction(self) -> float:
        """Reducción relativa de la ocupación sumada en las horas punta."""
        labels = slot_labels()
        base = sum(self.baseline[labels[h]] for h in RUSH_HOURS)
        alloc = sum(self.allocated[labels[h]] for h in RUSH_HOURS)
        return 0.0 if base == 0 else 1.0 - alloc / base

    def rows(self) -> list[tuple]:
        return [(label, self.baseline[label], self.allocated[label], self.dropped[label])
                for label in slot_labels()]


def load_arrivals(config: ExperimentConfig) -> list[list[int]]:
    """Llegadas del archivo --footfall (todos sus días) o un mes sintético calibrado."""
    if config.footfall:
        _, arrivals = ingest_footfall(Path(config.footfall))
        return arrivals
    return gen_footfall(FootfallModel(), config.days, trial_rng(config.seed, _ARRIVALS_KEY))


def baseline_profile(arrivals: Sequence[Sequence[int]]) -> dict[str, float]:
    labels = slot_labels()
    if not arrivals:
        return {label: 0.0 for label in labels}
    counts = np.array([np.bincount(np.asarray(day, dtype=np.int64), minlength=SLOT_COUNT)
                       for day in arrivals])
    means = counts.mean(axis=0)
    return {label: float(means[h]) for h, label in enumerate(labels)}


def run_capacity(
    config: ExperimentConfig,
    arrivals: Sequence[Sequence[int]],
    capacity: int,
    trace_path: Optional[Path] = None,
) -> CongestionResult:
    trace = simulate_days(
        arrivals,
        capacity,
        ValuationModel(delta=config.delta),
        EscalationRules(),
        seed=trial_rng(config.seed, _URGENCY_KEY),
        record_delays=config.with_delays,
    )
    labels = slot_labels()
    regular = [d for d in trace if not d.drain]
    dropped = np.zeros(SLOT_COUNT, dtype=np.int64)
    for d in trace:
        for spec in d.dropped:
            dropped[spec.first_choice] += 1

    result = CongestionResult(
        capacity=capacity,
        baseline=baseline_profile(arrivals),
        allocated=congestion_profile([d.outcome.allocation for d in regular], labels),
        dropped={label: int(dropped[h]) for h, label in enumerate(labels)},
        days=len(regular),
        drain_days=len(trace) - len(regular),
    )
    if trace_path is not None:
        atomic_write_bytes(trace_path, JSONRenderer().render([d.to_dict() for d in trace]))
    logger.info("Capacidad %s: %s descartados, reducción en horas punta %.1f%%",
                capacity, result.total_dropped, 100 * result.rush_reduction())
    return result


def run_congestion(
    config: ExperimentConfig,
    trace: bool = False,
    export_footfall: Optional[Path] = None,
) -> list[CongestionResult]:
    arrivals = load_arrivals(config)
    if export_footfall is not None:
        write_footfall_csv(arrivals, EXPORT_START, export_footfall)
    return [
        run_capacity(config, arrivals, cap,
                     config.output_path(f"trace_k{cap}.json") if trace else None)
        for cap in config.capacities
    ]


def write_congestion(config: ExperimentConfig, results: Sequence[CongestionResult]) -> list[Path]:
    return [
        write_csv(config.output_path(f"congestion_k{r.capacity}.csv"),
                  ("hour", "baseline_mean", "allocated_mean", "dropped_count"), r.rows())
        for r in results
    ]
