# apps/agenda/mecanismo/vcg.py
"""
Función de agendamiento: asignación de bienestar máximo más una demora
por agente igual a la externalidad que impone sobre los demás.

    d_i = W(sin i) - Σ_{l≠i} v_l(A*)

donde W(sin i) es el bienestar óptimo de la instancia sin el agente i.
Las demoras se miden en periodos y se pagan con espera, no con dinero.

Por defecto cada W(sin i) sale de una solución nueva sin el agente i,
n + 1 soluciones por periodo. Con reuse_network el backend de flujo
obtiene las n externalidades de la misma red óptima (una búsqueda de
ciclo por agente); las simulaciones de varios días lo usan.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from .engines import AllocationBackend, get_backend
from .schema import Allocation, Instance, Outcome
from .welfare import welfare, welfare_excluding

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MechanismConfig:
    use_oracle: bool = False
    # Sin demoras el resultado trae solo ceros (simulaciones largas).
    compute_delays: bool = True
    reuse_network: bool = False


def delay_for_agent(
    instance: Instance,
    agent: int,
    full: Allocation,
    backend: Optional[AllocationBackend] = None,
) -> float:
    agent = instance.check_agent(agent)
    backend = backend or get_backend()
    w_without = welfare(instance, backend.solve_excluding(instance, agent))
    others = welfare_excluding(instance, full, agent)
    # Diferencias de redondeo bajo cero se recortan.
    return max(0.0, w_without - others)


def run_period(instance: Instance, config: MechanismConfig = MechanismConfig()) -> Outcome:
    backend = get_backend(config.use_oracle)
    if not config.compute_delays:
        allocation = backend.solve(instance)
        delays = (0.0,) * instance.n
    elif config.reuse_network and backend.reuses_solution:
        allocation, delays = backend.solve_with_delays(instance)
    else:
        allocation = backend.solve(instance)
        delays = tuple(delay_for_agent(instance, i, allocation, backend) for i in range(instance.n))

    total = welfare(instance, allocation)
    log.debug("Periodo n=%s m=%s k=%s (%s): bienestar=%.6f", instance.n, instance.m,
              instance.k, backend.name, total)
    return Outcome(allocation, delays, total)
