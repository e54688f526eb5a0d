# apps/experimentos/services/prioritization.py
"""
Priorización por urgencia: para cada n se repite el mecanismo con urgencias
uniformes y se resume, por clase, el rango del bloque obtenido (solo
agentes asignados) y la demora (todos los agentes).

Las demoras se calculan solo en el régimen de preferencias idénticas, que es
el que alimenta priority_delay.csv.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from apps.agenda.mecanismo import InfeasibleAllocationError, Instance, MechanismConfig, Outcome, run_period
from apps.experimentos.errors import InvariantError
from apps.experimentos.metrics import URGENCY_CLASSES, ClassStats, class_stats, ranks
from apps.experimentos.simgen import IDENTICAL, RANDOM, REGIMES, ValuationModel, build_instance, gen_population

from .config import ExperimentConfig
from .output import write_csv
from .seeds import trial_rng

logger = logging.getLogger(__name__)

REGIME_KEYS = {IDENTICAL: 0, RANDOM: 1}


@dataclass(frozen=True)
class PrioritizationPoint:
    regime: str
    n: int
    trials: int
    ranks: Mapping[int, ClassStats]
    delays: Mapping[int, ClassStats]
    unallocated: Mapping[int, int]


def checked_period(instance: Instance, config: MechanismConfig) -> Outcome:
    try:
        return run_period(instance, config)
    except InfeasibleAllocationError as e:
        raise InvariantError(f"El mecanismo produjo una asignación infactible: {e}") from e


def run_point(config: ExperimentConfig, regime: str, n: int) -> PrioritizationPoint:
    model = ValuationModel(delta=config.delta)
    mech = MechanismConfig(compute_delays=regime == IDENTICAL)
    trials = config.trials(n)

    rank_values, rank_urg = [], []
    delays, urg = [], []
    for t in range(trials):
        specs = gen_population(n, config.m, regime, trial_rng(config.seed, REGIME_KEYS[regime], n, t))
        outcome = checked_period(build_instance(specs, model, config.m, config.k), mech)
        rho = ranks([s.pref_order for s in specs], outcome.allocation).rho
        for spec, r, d in zip(specs, rho, outcome.delays):
            urg.append(spec.urgency)
            delays.append(d)
            if r <= config.m:
                rank_values.append(r)
                rank_urg.append(spec.urgency)

    by_rank = class_stats(rank_values, rank_values, rank_urg)
    by_delay = class_stats(delays, delays, urg)
    unallocated = {c: by_delay[c].count - by_rank[c].count for c in URGENCY_CLASSES}
    return PrioritizationPoint(regime, n, trials, by_rank, by_delay, unallocated)


def run_prioritization(config: ExperimentConfig, regimes: Sequence[str] = REGIMES) -> list[PrioritizationPoint]:
    points = []
    for regime in regimes:
        for n in config.n_range:
            points.append(run_point(config, regime, n))
        logger.info("Priorización %s: n=%s..%s listo", regime, config.n_min, config.n_max)
    return points


def write_prioritization(config: ExperimentConfig, points: Sequence[PrioritizationPoint]) -> list[Path]:
    paths = []
    for regime in dict.fromkeys(p.regime for p in points):
        rows = [
            (p.n, c, p.ranks[c].mean_rank, p.ranks[c].std_rank)
            for p in points if p.regime == regime
            for c in URGENCY_CLASSES
        ]
        paths.append(write_csv(config.output_path(f"prioritization_{regime}.csv"),
                               ("n", "class", "mean_rank", "std_rank"), rows))

    delay_rows = [
        (p.n, c, p.delays[c].mean_delay, p.delays[c].std_delay)
        for p in points if p.regime == IDENTICAL
        for c in URGENCY_CLASSES
    ]
    if delay_rows:
        paths.append(write_csv(config.output_path("priority_delay.csv"),
                               ("n", "class", "mean_delay", "std_delay"), delay_rows))
    return paths
