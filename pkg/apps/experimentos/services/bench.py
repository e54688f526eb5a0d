# apps/experimentos/services/bench.py
"""Tiempo del mecanismo completo (asignación y las n demoras) con n = m·k."""
import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from apps.agenda.mecanismo import MechanismConfig
from apps.experimentos.simgen import RANDOM, ValuationModel, build_instance, gen_population

from .config import ExperimentConfig
from .output import write_csv
from .prioritization import checked_period
from .seeds import trial_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchResult:
    # (m, n, segundos promedio)
    rows: tuple
    slope: float


def loglog_slope(ms, seconds) -> float:
    """Pendiente de log(tiempo) contra log(m); NaN con menos de dos puntos útiles."""
    pts = [(math.log(m), math.log(s)) for m, s in zip(ms, seconds) if m > 0 and s > 0]
    if len({x for x, _ in pts}) < 2:
        return float("nan")
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def run_bench(config: ExperimentConfig) -> BenchResult:
    model = ValuationModel(delta=config.delta)
    # n + 1 soluciones por periodo: asignación y una por agente excluido.
    mech = MechanismConfig()
    k = config.bench_k

    rows = []
    for m in sorted(set(config.bench_m)):
        n = m * k
        elapsed = 0.0
        for t in range(config.bench_trials):
            specs = gen_population(n, m, RANDOM, trial_rng(config.seed, m, t))
            instance = build_instance(specs, model, m, k)
            start = time.perf_counter()
            checked_period(instance, mech)
            elapsed += time.perf_counter() - start
        rows.append((m, n, elapsed / config.bench_trials))
        logger.info("bench m=%s n=%s: %.4fs", m, n, rows[-1][2])

    slope = loglog_slope([r[0] for r in rows], [r[2] for r in rows])
    logger.info("Pendiente log-log: %s", slope)
    return BenchResult(tuple(rows), slope)


def write_bench(config: ExperimentConfig, result: BenchResult) -> Path:
    # Los tiempos cambian de una corrida a otra; este es el único CSV no determinista.
    return write_csv(config.output_path("bench.csv"), ("m", "n", "mean_seconds"), result.rows)
