# apps/agenda/mecanismo/welfare.py
"""
Álgebra del pago cuasi-lineal: bienestar de una asignación, utilidad de un
agente y verificación de las dos familias de restricciones del programa
(cada agente a lo más un bloque, cada bloque a lo más k agentes).
"""
from .errors import InfeasibleAllocationError, InstanceError
from .schema import Allocation, Instance, Outcome, Payoff, Violation


def validate(instance: Instance, allocation: Allocation) -> tuple[Violation, ...]:
    """Tupla vacía si la asignación es factible; si no, las violaciones encontradas."""
    if allocation.n != instance.n:
        return (Violation("dimension", allocation.n,
                          f"la asignación tiene {allocation.n} agentes y la instancia {instance.n}"),)

    violations = []
    counts = [0] * instance.m
    for i, j in allocation.allocated():
        if not 0 <= j < instance.m:
            violations.append(Violation("slot_range", i, f"bloque {j} fuera de 0..{instance.m - 1}"))
            continue
        counts[j] += 1

    for j, c in enumerate(counts):
        if c > instance.k:
            violations.append(Violation("capacity", j, f"{c} agentes con capacidad {instance.k}"))
    return tuple(violations)


def welfare(instance: Instance, allocation: Allocation) -> float:
    """Suma de valoraciones asignadas, siempre en orden de agente."""
    violations = validate(instance, allocation)
    if violations:
        raise InfeasibleAllocationError(violations)

    v = instance.valuations
    total = 0.0
    for i, j in allocation.allocated():
        total += float(v[i, j])
    return total


def welfare_excluding(instance: Instance, allocation: Allocation, agent: int) -> float:
    """Bienestar de los demás agentes bajo la asignación, sumado en orden de agente."""
    agent = instance.check_agent(agent)
    v = instance.valuations
    total = 0.0
    for i, j in allocation.allocated():
        if i != agent:
            total += float(v[i, j])
    return total


def value_of(instance: Instance, allocation: Allocation, agent: int) -> float:
    j = allocation.slot_of(agent)
    return 0.0 if j is None else float(instance.valuations[agent, j])


def payoff(instance: Instance, outcome: Outcome, agent: int) -> Payoff:
    if outcome.allocation.n != instance.n:
        raise InstanceError(
            f"El resultado tiene {outcome.allocation.n} agentes y la instancia {instance.n}."
        )
    agent = instance.check_agent(agent)
    return Payoff(value_of(instance, outcome.allocation, agent) - outcome.delays[agent])
