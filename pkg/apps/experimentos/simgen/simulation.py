# apps/experimentos/simgen/simulation.py
"""
Simulación de varios días con arrastre: cada día se agenda el grupo formado
por los que quedaron sin bloque y los recién llegados. Quien no obtiene
bloque vuelve al día siguiente con una urgencia más; tras tres días seguidos
sin bloque sale de la simulación.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Sequence

import numpy as np

from apps.agenda.mecanismo import MechanismConfig, Outcome, run_period

from .footfall import SLOT_COUNT
from .population import MAX_DAYS_WAITING, AgentSpec, SeedLike, ValuationModel, build_instance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EscalationRules:
    step: int = 1
    max_urgency: int = 3
    max_days_waiting: int = MAX_DAYS_WAITING
    # False: quien vuelve sortea un nuevo orden de preferencia.
    keep_preferences: bool = True

    def __post_init__(self):
        if self.step < 0:
            raise ValueError("step no puede ser negativo.")
        if not 1 <= self.max_urgency <= 3:
            raise ValueError("max_urgency debe estar en 1..3.")
        if not 1 <= self.max_days_waiting <= MAX_DAYS_WAITING:
            raise ValueError(f"max_days_waiting debe estar en 1..{MAX_DAYS_WAITING}.")

    def escalate(self, spec: AgentSpec, rng: np.random.Generator) -> AgentSpec:
        urgency = max(spec.urgency, min(spec.urgency + self.step, self.max_urgency))
        order = None
        if not self.keep_preferences:
            order = tuple(int(j) for j in rng.permutation(len(spec.pref_order)))
        return spec.carried_over(urgency, order)


@dataclass(frozen=True)
class DaySim:
    day: int
    agents: tuple
    outcome: Outcome
    carryover: tuple
    dropped: tuple
    # Día extra para vaciar el arrastre después del horizonte pedido.
    drain: bool = False
    allocated_ids: tuple = field(default=())

    def occupancy(self, m: int = SLOT_COUNT) -> np.ndarray:
        return self.outcome.allocation.occupancy(m)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "day": self.day,
            "drain": self.drain,
            "instance": {"n": len(self.agents), "ids": [a.id for a in self.agents]},
            "assignment": list(self.outcome.assignment),
            "delays": list(self.outcome.delays),
            "carryover": [a.id for a in self.carryover],
            "dropped": [a.id for a in self.dropped],
        }


def proximity_order(hour: int, m: int = SLOT_COUNT) -> tuple:
    """La hora de llegada primero; luego por distancia, y ante empate la hora más tardía."""
    return tuple(sorted(range(m), key=lambda j: (abs(j - hour), -j)))


def simulate_days(
    arrivals: Sequence[Sequence[int]],
    k: int,
    model: ValuationModel,
    rules: EscalationRules = EscalationRules(),
    days: Optional[int] = None,
    seed: SeedLike = 0,
    m: int = SLOT_COUNT,
    drain: bool = True,
    record_delays: bool = True,
) -> list[DaySim]:
    if k < 1:
        raise ValueError("La capacidad k debe ser al menos 1.")
    days = len(arrivals) if days is None else days
    rng = np.random.default_rng(seed)
    # Cientos de agentes por día: las demoras salen de la red óptima.
    config = MechanismConfig(compute_delays=record_delays, reuse_network=True)

    trace: list[DaySim] = []
    pool: list[AgentSpec] = []
    day = 0
    while day < days or (drain and pool):
        hours = arrivals[day] if day < min(days, len(arrivals)) else []
        urgencies = rng.integers(1, 4, size=len(hours))
        newcomers = [
            AgentSpec(id=f"d{day:03d}-{idx:04d}", urgency=int(u), pref_order=proximity_order(int(h), m))
            for idx, (h, u) in enumerate(zip(hours, urgencies))
        ]
        agents = pool + newcomers
        outcome = run_period(build_instance(agents, model, m, k), config)

        allocated, carry, dropped = [], [], []
        for spec, slot in zip(agents, outcome.assignment):
            if slot is not None:
                allocated.append(spec.id)
            elif spec.days_waiting + 1 >= rules.max_days_waiting:
                dropped.append(replace(spec, days_waiting=spec.days_waiting + 1))
            else:
                carry.append(rules.escalate(spec, rng))

        trace.append(DaySim(
            day=day,
            agents=tuple(agents),
            outcome=outcome,
            carryover=tuple(carry),
            dropped=tuple(dropped),
            drain=day >= days,
            allocated_ids=tuple(allocated),
        ))
        logger.debug("Día %s: %s agentes, %s asignados, %s arrastrados, %s descartados",
                     day, len(agents), len(allocated), len(carry), len(dropped))
        pool = carry
        day += 1
    return trace
