# apps/experimentos/metrics.py
"""
Métricas sobre resultados del mecanismo: rango de preferencia del bloque
asignado, la medida de mala priorización, ocupación media por bloque y
estadísticas por clase de urgencia.

Un agente sin asignar recibe el rango m+1, peor que cualquier bloque.
"""
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from apps.agenda.mecanismo import Allocation

URGENCY_CLASSES = (1, 2, 3)


@dataclass(frozen=True)
class UrgencyProfile:
    urg: tuple

    def __post_init__(self):
        urg = tuple(int(u) for u in self.urg)
        if any(u not in URGENCY_CLASSES for u in urg):
            raise ValueError("Las urgencias deben estar en {1, 2, 3}.")
        object.__setattr__(self, "urg", urg)


@dataclass(frozen=True)
class RankProfile:
    rho: tuple
    m: int

    def __post_init__(self):
        rho = tuple(int(r) for r in self.rho)
        if any(not 1 <= r <= self.m + 1 for r in rho):
            raise ValueError(f"Los rangos deben estar en 1..{self.m + 1}.")
        object.__setattr__(self, "rho", rho)

    @property
    def unallocated_rank(self) -> int:
        return self.m + 1


@dataclass(frozen=True)
class ClassStats:
    count: int
    mean_rank: Optional[float]
    std_rank: Optional[float]
    mean_delay: Optional[float]
    std_delay: Optional[float]


def ranks(preferences: Sequence[Sequence[int]], allocation: Allocation) -> RankProfile:
    if len(preferences) != allocation.n:
        raise ValueError("Debe haber un orden de preferencia por agente.")
    m = len(preferences[0]) if preferences else 0
    rho = []
    for i, order in enumerate(preferences):
        if sorted(order) != list(range(m)):
            raise ValueError(f"El orden del agente {i} no es una permutación de los {m} bloques.")
        slot = allocation.slot_of(i)
        rho.append(m + 1 if slot is None else list(order).index(slot) + 1)
    return RankProfile(tuple(rho), m)


def mispriority(rank_profile: RankProfile, urgency: UrgencyProfile) -> float:
    """
    Σ sobre pares (i, j) con ρ_j > ρ_i y urg_j > urg_i de (ρ_j − ρ_i) + (urg_j − urg_i).

    Cuenta cada vez que un agente más urgente queda con un bloque peor que uno
    menos urgente, pesando por ambas brechas.
    """
    rho = np.asarray(rank_profile.rho, dtype=np.int64)
    u = np.asarray(urgency.urg, dtype=np.int64)
    if rho.shape != u.shape:
        raise ValueError("Rangos y urgencias deben tener el mismo largo.")
    dr = rho[None, :] - rho[:, None]
    du = u[None, :] - u[:, None]
    mask = (dr > 0) & (du > 0)
    return float((dr + du)[mask].sum())


def congestion_profile(allocations: Sequence[Allocation], slot_labels: Sequence[str]) -> dict:
    """Ocupación media por bloque a lo largo de los días, en el orden de las etiquetas."""
    m = len(slot_labels)
    if not allocations:
        return {label: 0.0 for label in slot_labels}
    counts = np.zeros((len(allocations), m), dtype=np.int64)
    for d, alloc in enumerate(allocations):
        for _, j in alloc.allocated():
            if not 0 <= j < m:
                raise ValueError(f"Día {d}: bloque {j} sin etiqueta (m={m}).")
            counts[d, j] += 1
    means = counts.mean(axis=0)
    return {label: float(means[j]) for j, label in enumerate(slot_labels)}


def _mean_std(values: np.ndarray) -> tuple[Optional[float], Optional[float]]:
    if values.size == 0:
        return None, None
    std = float(values.std(ddof=1)) if values.size > 1 else None
    return float(values.mean()), std


def class_stats(
    rank_values: Sequence[float],
    delays: Sequence[float],
    urgency: Sequence[int],
) -> Mapping[int, ClassStats]:
    """
    Media y desviación estándar muestral por clase. Una clase sin agentes
    queda con None; con un solo agente la desviación es None.
    """
    rho = np.asarray(getattr(rank_values, "rho", rank_values), dtype=np.float64)
    d = np.asarray(delays, dtype=np.float64)
    u = np.asarray(getattr(urgency, "urg", urgency), dtype=np.int64)
    if not rho.shape == d.shape == u.shape:
        raise ValueError("Rangos, demoras y urgencias deben tener el mismo largo.")

    out = {}
    for c in URGENCY_CLASSES:
        sel = u == c
        mean_rank, std_rank = _mean_std(rho[sel])
        mean_delay, std_delay = _mean_std(d[sel])
        out[c] = ClassStats(int(sel.sum()), mean_rank, std_rank, mean_delay, std_delay)
    return out
