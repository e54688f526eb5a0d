# apps/agenda/mecanismo/baselines.py
"""
Mecanismos de comparación sin demoras.

- fcfs: atiende en orden de llegada; cada agente toma su bloque favorito
  entre los que aún tienen cupo, y no reserva bloques que no le sirven
  (valoración cero).
- sequential_dictator: lo mismo, pero el orden es por urgencia descendente
  (empates por índice) y cada agente toma su favorito aunque valga cero.
  Con urgencias iguales coincide con fcfs en orden de llegada solo si
  ningún agente termina eligiendo entre bloques que valen cero para él.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InstanceError
from .schema import UNALLOCATED, Allocation, Instance, Outcome
from .welfare import welfare


@dataclass(frozen=True)
class ArrivalOrder:
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))

    @classmethod
    def identity(cls, n: int) -> "ArrivalOrder":
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "ArrivalOrder":
        return cls(tuple(int(i) for i in rng.permutation(n)))

    def check(self, n: int) -> None:
        if sorted(self.order) != list(range(n)):
            raise InstanceError(f"El orden de llegada no es una permutación de 0..{n - 1}.")


def _serve(instance: Instance, order: Sequence[int], accept_zero: bool) -> Allocation:
    v = instance.valuations
    remaining = np.full(instance.m, instance.k, dtype=np.int64)
    assignment = [UNALLOCATED] * instance.n
    for i in order:
        row = np.where(remaining > 0, v[i], -1.0)
        j = int(row.argmax())  # empate → bloque de menor índice
        if row[j] < 0 or (row[j] == 0 and not accept_zero):
            continue
        assignment[i] = j
        remaining[j] -= 1
    return Allocation(tuple(assignment))


def _zero_delay_outcome(instance: Instance, allocation: Allocation) -> Outcome:
    return Outcome(allocation, (0.0,) * instance.n, welfare(instance, allocation))


def fcfs(instance: Instance, order: ArrivalOrder, accept_zero: bool = False) -> Outcome:
    order.check(instance.n)
    return _zero_delay_outcome(instance, _serve(instance, order.order, accept_zero))


def sequential_dictator(
    instance: Instance, urgencies: Sequence[int], accept_zero: bool = True
) -> Outcome:
    if len(urgencies) != instance.n:
        raise InstanceError(
            f"Se recibieron {len(urgencies)} urgencias para {instance.n} agentes."
        )
    order = sorted(range(instance.n), key=lambda i: (-urgencies[i], i))
    return _zero_delay_outcome(instance, _serve(instance, order, accept_zero))
