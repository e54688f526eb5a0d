# apps/agenda/mecanismo/engines/__init__.py
"""
Backends de asignación intercambiables: el solver de flujo para uso normal
y el oráculo exhaustivo para pruebas.
"""
from ..schema import Allocation, Instance
from . import flow, oracle


class AllocationBackend:
    name = ""
    # True si el backend entrega las demoras sin resolver una instancia por agente.
    reuses_solution = False

    def solve(self, instance: Instance) -> Allocation:
        raise NotImplementedError

    def solve_excluding(self, instance: Instance, excluded: int) -> Allocation:
        raise NotImplementedError

    def solve_with_delays(self, instance: Instance) -> tuple[Allocation, tuple]:
        raise NotImplementedError


class FlowBackend(AllocationBackend):
    name = "flow"
    reuses_solution = True

    def solve(self, instance: Instance) -> Allocation:
        return flow.solve(instance)

    def solve_excluding(self, instance: Instance, excluded: int) -> Allocation:
        return flow.solve_excluding(instance, excluded)

    def solve_with_delays(self, instance: Instance) -> tuple[Allocation, tuple]:
        return flow.solve_with_delays(instance)


class OracleBackend(AllocationBackend):
    name = "oracle"

    def solve(self, instance: Instance) -> Allocation:
        return oracle.solve_exact(instance)[0]

    def solve_excluding(self, instance: Instance, excluded: int) -> Allocation:
        return oracle.solve_exact_excluding(instance, excluded)


def get_backend(use_oracle: bool = False) -> AllocationBackend:
    if use_oracle:
        return OracleBackend()
    return FlowBackend()
