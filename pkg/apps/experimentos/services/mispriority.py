# apps/experimentos/services/mispriority.py
"""
Mala priorización de FCFS (orden de llegada al azar) frente al mecanismo,
ambos sobre la misma población por prueba.
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import spearmanr

from apps.agenda.mecanismo import ArrivalOrder, MechanismConfig, fcfs
from apps.experimentos.metrics import UrgencyProfile, mispriority, ranks
from apps.experimentos.simgen import ValuationModel, build_instance, gen_population

from .config import ExperimentConfig
from .output import write_csv
from .prioritization import checked_period
from .seeds import trial_rng

logger = logging.getLogger(__name__)

MECHANISMS = ("fcfs", "vcg")


@dataclass(frozen=True)
class MispriorityResult:
    # (n, mecanismo, media)
    rows: tuple
    spearman: float

    def series(self, mechanism: str) -> list[tuple[int, float]]:
        return [(n, mean) for n, name, mean in self.rows if name == mechanism]


def run_mispriority(config: ExperimentConfig) -> MispriorityResult:
    model = ValuationModel(delta=config.delta)
    mech = MechanismConfig(compute_delays=False)

    rows = []
    for n in config.n_range:
        totals = dict.fromkeys(MECHANISMS, 0.0)
        trials = config.trials(n)
        for t in range(trials):
            rng = trial_rng(config.seed, n, t)
            specs = gen_population(n, config.m, config.regime, rng)
            instance = build_instance(specs, model, config.m, config.k)
            prefs = [s.pref_order for s in specs]
            urg = UrgencyProfile(tuple(s.urgency for s in specs))

            outcomes = {
                "fcfs": fcfs(instance, ArrivalOrder.random(n, rng)),
                "vcg": checked_period(instance, mech),
            }
            for name, outcome in outcomes.items():
                totals[name] += mispriority(ranks(prefs, outcome.allocation), urg)
        rows.extend((n, name, totals[name] / trials) for name in MECHANISMS)

    curve = [mean for _, name, mean in rows if name == "fcfs"]
    rho = float("nan")
    if len(curve) > 1 and np.ptp(curve) > 0:
        rho = float(spearmanr(list(config.n_range), curve)[0])
    logger.info("Mala priorización FCFS vs n: Spearman %s", "n/d" if math.isnan(rho) else f"{rho:.3f}")
    return MispriorityResult(tuple(rows), rho)


def write_mispriority(config: ExperimentConfig, result: MispriorityResult) -> Path:
    return write_csv(config.output_path("mispriority.csv"), ("n", "mechanism", "mean_mispriority"), result.rows)
