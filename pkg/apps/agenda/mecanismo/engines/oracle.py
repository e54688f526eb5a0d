# apps/agenda/mecanismo/engines/oracle.py
"""
Solver exacto para instancias chicas (n ≤ AGENDA_ORACLE_MAX_AGENTS).

Sirve de referencia para las pruebas del solver de flujo. El orden de
enumeración es lexicográfico sobre la elección de cada agente, con los
bloques 0..m-1 primero y "sin asignar" al final; ante empates de bienestar
gana la primera asignación en ese orden.
"""
import logging
from functools import lru_cache
from typing import Iterator

from ..config import settings
from ..errors import InstanceTooLargeError
from ..schema import UNALLOCATED, Allocation, Instance
from ..welfare import welfare

log = logging.getLogger(__name__)


def _guard(instance: Instance) -> None:
    if instance.n > settings.ORACLE_MAX_AGENTS:
        raise InstanceTooLargeError(
            f"El oráculo acepta hasta {settings.ORACLE_MAX_AGENTS} agentes (n={instance.n})."
        )


def enumerate_allocations(instance: Instance) -> Iterator[Allocation]:
    """Todas las asignaciones factibles, podando por capacidad al avanzar."""
    _guard(instance)
    n, m, k = instance.n, instance.m, instance.k
    choices = list(range(m)) + [UNALLOCATED]
    load = [0] * m
    current = [UNALLOCATED] * n

    def extend(i: int) -> Iterator[Allocation]:
        if i == n:
            yield Allocation(tuple(current))
            return
        for c in choices:
            if c is not UNALLOCATED:
                if load[c] >= k:
                    continue
                load[c] += 1
            current[i] = c
            yield from extend(i + 1)
            if c is not UNALLOCATED:
                load[c] -= 1
        current[i] = UNALLOCATED

    yield from extend(0)


def _search(instance: Instance) -> Allocation:
    """
    Misma búsqueda exhaustiva, memorizando por (agente, cargas por bloque).

    Dos ramas con iguales cargas tienen el mismo mejor completamiento, así
    que cada estado se explora una vez; la comparación estricta conserva el
    desempate del orden de enumeración.
    """
    n, m, k = instance.n, instance.m, instance.k
    v = instance.valuations.tolist()
    choices = list(range(m)) + [UNALLOCATED]

    @lru_cache(maxsize=None)
    def best(i: int, loads: tuple) -> tuple[float, tuple]:
        if i == n:
            return 0.0, ()
        top, pick = -1.0, ()
        for c in choices:
            if c is UNALLOCATED:
                rest_value, rest = best(i + 1, loads)
                value = rest_value
            else:
                if loads[c] >= k:
                    continue
                rest_value, rest = best(i + 1, loads[:c] + (loads[c] + 1,) + loads[c + 1:])
                value = v[i][c] + rest_value
            if value > top:
                top, pick = value, (c,) + rest
        return top, pick

    return Allocation(best(0, (0,) * m)[1])


def solve_exact(instance: Instance, exhaustive: bool = False) -> tuple[Allocation, float]:
    """
    (asignación, bienestar) óptimos.

    Con exhaustive=True recorre enumerate_allocations una por una; si no,
    usa la búsqueda memorizada, que devuelve lo mismo en mucho menos tiempo.
    """
    _guard(instance)
    if exhaustive:
        best_alloc, best_value = None, -1.0
        for alloc in enumerate_allocations(instance):
            value = welfare(instance, alloc)
            if value > best_value:
                best_alloc, best_value = alloc, value
        return best_alloc, best_value

    alloc = _search(instance)
    return alloc, welfare(instance, alloc)


def solve_exact_excluding(instance: Instance, excluded: int) -> Allocation:
    excluded = instance.check_agent(excluded)
    sub = solve_exact(instance.without(excluded))[0].assignment
    return Allocation(sub[:excluded] + (UNALLOCATED,) + sub[excluded:])
