# apps/experimentos/simgen/population.py
"""
Agentes de los experimentos y su valoración por clase de urgencia:
el t-ésimo bloque preferido vale class_value(urgencia) · δ^(t-1).
"""
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np

from apps.agenda.mecanismo import Instance

IDENTICAL = "identical"
RANDOM = "random"
REGIMES = (IDENTICAL, RANDOM)

MAX_DAYS_WAITING = 3

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


@dataclass(frozen=True)
class ValuationModel:
    delta: float = 0.65
    # no urgente, media, urgente
    class_values: tuple = field(default=(1.0, 2.0, 3.0))

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta debe estar en (0, 1) (recibido {self.delta}).")
        if len(self.class_values) != 3:
            raise ValueError("Se requiere un valor por clase de urgencia (1, 2, 3).")

    def class_value(self, urgency: int) -> float:
        return float(self.class_values[urgency - 1])


@dataclass(frozen=True)
class AgentSpec:
    id: str
    urgency: int
    pref_order: tuple
    days_waiting: int = 0

    def __post_init__(self):
        order = tuple(int(j) for j in self.pref_order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"{self.id}: pref_order no es una permutación de los bloques.")
        if self.urgency not in (1, 2, 3):
            raise ValueError(f"{self.id}: urgencia {self.urgency} fuera de {{1, 2, 3}}.")
        if not 0 <= self.days_waiting <= MAX_DAYS_WAITING:
            raise ValueError(f"{self.id}: days_waiting debe estar en 0..{MAX_DAYS_WAITING}.")
        object.__setattr__(self, "pref_order", order)

    @property
    def first_choice(self) -> int:
        return self.pref_order[0]

    def carried_over(self, urgency: int, pref_order: Sequence[int] = None) -> "AgentSpec":
        return replace(
            self,
            urgency=urgency,
            days_waiting=self.days_waiting + 1,
            pref_order=self.pref_order if pref_order is None else tuple(pref_order),
        )


def valuations_from_spec(spec: AgentSpec, model: ValuationModel, m: int) -> np.ndarray:
    if len(spec.pref_order) != m:
        raise ValueError(f"{spec.id}: pref_order tiene {len(spec.pref_order)} bloques; se esperaban {m}.")
    row = np.empty(m)
    row[list(spec.pref_order)] = model.class_value(spec.urgency) * model.delta ** np.arange(m)
    return row


def build_instance(specs: Sequence[AgentSpec], model: ValuationModel, m: int, k: int) -> Instance:
    rows = [valuations_from_spec(s, model, m) for s in specs]
    return Instance(m, k, np.array(rows) if rows else np.zeros((0, m)))


def gen_population(n: int, m: int, regime: str, seed: SeedLike) -> list[AgentSpec]:
    """Urgencias uniformes en {1, 2, 3}; preferencias idénticas (0..m-1) o permutaciones al azar."""
    if n < 0:
        raise ValueError("n no puede ser negativo.")
    if regime not in REGIMES:
        raise ValueError(f"Régimen desconocido: {regime!r} (use {', '.join(REGIMES)}).")
    rng = np.random.default_rng(seed)
    urgencies = rng.integers(1, 4, size=n)
    specs = []
    for i in range(n):
        order = tuple(range(m)) if regime == IDENTICAL else tuple(int(j) for j in rng.permutation(m))
        specs.append(AgentSpec(id=f"a{i:04d}", urgency=int(urgencies[i]), pref_order=order))
    return specs
