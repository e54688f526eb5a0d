# -*- coding: utf-8 -*-
# apps/agenda/mecanismo/schema.py
"""
Tipos del dominio: instancia de un periodo, asignación, resultado y pago.

Los agentes se identifican por su fila dentro de la instancia; los
identificadores estables viven solo en la capa de simulación.
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Sequence

import numpy as np

from .errors import AgentIndexError, InstanceError

# Marcador explícito de "sin asignar" dentro de una asignación.
UNALLOCATED = None


def _positive_int(name: str, value: Any) -> int:
    try:
        ok = not isinstance(value, bool) and int(value) == value and int(value) >= 1
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise InstanceError(f"{name} debe ser un entero positivo (recibido {value!r}).")
    return int(value)


@dataclass(frozen=True, eq=False)
class Instance:
    """Problema de un periodo: m bloques de capacidad k y la matriz n×m de valoraciones."""
    m: int
    k: int
    valuations: np.ndarray

    def __post_init__(self):
        m = _positive_int("m", self.m)
        k = _positive_int("k", self.k)
        try:
            v = np.array(self.valuations, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise InstanceError(f"Valoraciones ilegibles: {e}") from e
        if v.ndim == 1 and v.size == 0:
            v = v.reshape(0, m)
        if v.ndim != 2 or v.shape[1] != m:
            raise InstanceError(f"Cada fila debe tener exactamente m={m} valoraciones.")
        if not np.all(np.isfinite(v)):
            raise InstanceError("Las valoraciones deben ser finitas.")
        if np.any(v < 0):
            raise InstanceError("Las valoraciones no pueden ser negativas.")
        v.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "valuations", v)

    @property
    def n(self) -> int:
        return self.valuations.shape[0]

    def check_agent(self, agent: int) -> int:
        if isinstance(agent, bool) or not 0 <= int(agent) < self.n:
            raise AgentIndexError(f"Agente {agent} fuera de rango (n={self.n}).")
        return int(agent)

    def without(self, agent: int) -> "Instance":
        """Sub-instancia sin la fila del agente (el resto se reindexa)."""
        agent = self.check_agent(agent)
        return Instance(self.m, self.k, np.delete(self.valuations, agent, axis=0))

    def with_report(self, agent: int, row: Sequence[float]) -> "Instance":
        """Misma instancia con la fila de un agente reemplazada (reporte alternativo)."""
        agent = self.check_agent(agent)
        v = self.valuations.copy()
        v[agent] = row
        return Instance(self.m, self.k, v)

    def scaled(self, factor: float) -> "Instance":
        return Instance(self.m, self.k, self.valuations * factor)

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "k": self.k, "valuations": self.valuations.tolist()}


@dataclass(frozen=True)
class Allocation:
    """Bloque asignado a cada agente (None = sin asignar)."""
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "assignment",
            tuple(UNALLOCATED if a is None else int(a) for a in self.assignment),
        )

    @classmethod
    def empty(cls, n: int) -> "Allocation":
        return cls((UNALLOCATED,) * n)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def slot_of(self, agent: int) -> Optional[int]:
        return self.assignment[agent]

    def allocated(self) -> Iterator[tuple[int, int]]:
        for i, j in enumerate(self.assignment):
            if j is not None:
                yield i, j

    def occupancy(self, m: int) -> np.ndarray:
        counts = np.zeros(m, dtype=np.int64)
        for _, j in self.allocated():
            counts[j] += 1
        return counts


@dataclass(frozen=True)
class Outcome:
    """Salida de la función de agendamiento: asignación, demoras (en periodos) y bienestar."""
    allocation: Allocation
    delays: tuple
    welfare: float

    def __post_init__(self):
        delays = tuple(float(d) for d in self.delays)
        if len(delays) != self.allocation.n:
            raise ValueError("Debe haber una demora por agente.")
        if any(d < 0 for d in delays):
            raise ValueError("Las demoras no pueden ser negativas.")
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "welfare", float(self.welfare))

    @property
    def assignment(self) -> tuple:
        return self.allocation.assignment

    def to_dict(self) -> Dict[str, Any]:
        return {
            "assignment": list(self.assignment),
            "delays": list(self.delays),
            "welfare": self.welfare,
        }


@dataclass(frozen=True)
class Payoff:
    """Utilidad cuasi-lineal de un agente: valoración del bloque recibido menos su demora."""
    value: float

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class Violation:
    constraint: str  # "dimension" | "slot_range" | "capacity"
    index: int
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.constraint}[{self.index}]: {self.detail}"
