# apps/agenda/mecanismo/engines/flow.py
"""
Solver de producción: b-matching de peso mínimo resuelto como flujo de
costo mínimo sobre la red fuente → agentes → bloques → sumidero.

Caminos aumentantes sucesivos con potenciales (Dijkstra sobre costos
reducidos). Como cada agente tiene oferta 1, el Dijkstra se corre sobre
los nodos de bloque: pasar de un bloque j a otro j' significa mover a un
agente ya asignado en j, y entrar desde la fuente significa tomar a un
agente libre. Los potenciales de los agentes se mantienen igual para que
los invariantes de la red completa se puedan verificar.

Desempates: en cada bloque entra el agente de menor índice entre los de
menor costo; entre etiquetas de igual distancia se fija primero el bloque
de menor índice, y ante empate con el sumidero se termina la búsqueda.
"""
import bisect
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import settings
from ..schema import Allocation, Instance

log = logging.getLogger(__name__)

INF = float("inf")
SOURCE = 0


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    cost: float
    flow: int


@dataclass(frozen=True)
class AugmentingPath:
    """
    Camino s → agents[0] → slots[0] → agents[1] → slots[1] → ... → t.

    agents[0] está libre; agents[t] (t ≥ 1) deja slots[t-1] y pasa a slots[t].
    """
    cost: float
    slots: tuple
    agents: tuple
    reduced_cost: float
    slot_distances: np.ndarray


class FlowNetwork:
    """
    Red de flujo de una instancia.

    Nodos: 0 fuente, 1..n agentes, n+1..n+m bloques, n+m+1 sumidero.
    Arcos: fuente→agente (cap 1, costo 0), agente→bloque (cap 1, costo -v_ij),
    bloque→sumidero (cap k, costo 0).
    """

    def __init__(self, instance: Instance):
        self.n, self.m, self.k = instance.n, instance.m, instance.k
        self._value = instance.valuations
        self._cost = -instance.valuations
        self._assign = np.full(self.n, -1, dtype=np.int64)
        self._members = [[] for _ in range(self.m)]
        self._load = np.zeros(self.m, dtype=np.int64)

        # Potenciales iniciales en una pasada sobre los arcos agente→bloque.
        self._pi_source = 0.0
        self._pi_agent = np.zeros(self.n)
        if self.n:
            self._pi_slot = self._cost.min(axis=0)
        else:
            self._pi_slot = np.zeros(self.m)
        self._pi_sink = float(self._pi_slot.min())

        self.path_costs: list[float] = []

    # ------------------------------------------------------------------
    # Estructura
    # ------------------------------------------------------------------
    def agent_node(self, i: int) -> int:
        return 1 + i

    def slot_node(self, j: int) -> int:
        return 1 + self.n + j

    @property
    def sink(self) -> int:
        return 1 + self.n + self.m

    @property
    def node_count(self) -> int:
        return self.n + self.m + 2

    @property
    def arc_count(self) -> int:
        return self.n + self.n * self.m + self.m

    @property
    def potentials(self) -> np.ndarray:
        return np.concatenate(([self._pi_source], self._pi_agent, self._pi_slot, [self._pi_sink]))

    def arcs(self) -> list[Arc]:
        out = []
        for i in range(self.n):
            out.append(Arc(SOURCE, self.agent_node(i), 1, 0.0, int(self._assign[i] >= 0)))
        for i in range(self.n):
            for j in range(self.m):
                out.append(Arc(self.agent_node(i), self.slot_node(j), 1,
                               float(self._cost[i, j]), int(self._assign[i] == j)))
        for j in range(self.m):
            out.append(Arc(self.slot_node(j), self.sink, self.k, 0.0, int(self._load[j])))
        return out

    # ------------------------------------------------------------------
    # Invariantes
    # ------------------------------------------------------------------
    def check_conservation(self) -> bool:
        """Flujo dentro de [0, capacidad] en cada arco y conservación en nodos internos."""
        balance = np.zeros(self.node_count, dtype=np.int64)
        for arc in self.arcs():
            if not 0 <= arc.flow <= arc.capacity:
                return False
            balance[arc.tail] -= arc.flow
            balance[arc.head] += arc.flow
        return bool(np.all(balance[1:-1] == 0) and balance[SOURCE] == -balance[self.sink])

    def check_reduced_costs(self, tol: Optional[float] = None) -> bool:
        """Todo arco residual (directo o inverso) tiene costo reducido ≥ -tol."""
        tol = settings.TOLERANCE if tol is None else tol
        pi = self.potentials
        for arc in self.arcs():
            rc = arc.cost + pi[arc.tail] - pi[arc.head]
            if arc.flow < arc.capacity and rc < -tol:
                return False
            if arc.flow > 0 and -rc < -tol:
                return False
        return True

    # ------------------------------------------------------------------
    # Caminos aumentantes
    # ------------------------------------------------------------------
    def shortest_path(self) -> Optional[AugmentingPath]:
        free = self._assign < 0
        if not free.any():
            return None

        m = self.m
        cols = np.arange(m)
        pi_slot = self._pi_slot

        # Entrada desde la fuente: mejor agente libre por bloque.
        masked = np.where(free[:, None], self._cost, INF)
        via = masked.argmin(axis=0)
        dist = masked[via, cols] + self._pi_source - pi_slot
        prev = np.full(m, -1, dtype=np.int64)
        done = np.zeros(m, dtype=bool)

        dist_t, last = INF, -1
        while True:
            cand = np.where(done, INF, dist)
            j = int(cand.argmin())
            if not cand[j] < dist_t:
                break
            done[j] = True
            dj = float(dist[j])

            if self._load[j] < self.k:
                d = dj + pi_slot[j] - self._pi_sink
                if d < dist_t:
                    dist_t, last = d, j

            members = self._members[j]
            if not members:
                continue
            rows = np.asarray(members, dtype=np.int64)
            vals = self._value[rows]
            # j → i → j': v_ij - v_ij' + π_j - π_j'
            w = (vals[:, j] + pi_slot[j])[:, None] - vals - pi_slot[None, :]
            best = w.argmin(axis=0)
            new = dj + w[best, cols]
            better = (new < dist) & ~done
            if better.any():
                dist[better] = new[better]
                via[better] = rows[best[better]]
                prev[better] = j

        if last < 0:
            return None

        slots, agents = [], []
        j = last
        while j >= 0:
            slots.append(j)
            agents.append(int(via[j]))
            j = int(prev[j])
        slots.reverse()
        agents.reverse()
        return AugmentingPath(
            cost=dist_t + self._pi_sink - self._pi_source,
            slots=tuple(slots),
            agents=tuple(agents),
            reduced_cost=dist_t,
            slot_distances=dist,
        )

    def augment(self, path: AugmentingPath) -> None:
        d_t = path.reduced_cost

        # Distancias de agentes con la asignación previa al aumento.
        d_agent = self._pi_source - self._pi_agent
        placed = np.flatnonzero(self._assign >= 0)
        if placed.size:
            sl = self._assign[placed]
            d_agent[placed] = (path.slot_distances[sl] + self._value[placed, sl]
                               + self._pi_slot[sl] - self._pi_agent[placed])

        self._pi_agent += np.minimum(d_agent, d_t)
        self._pi_slot += np.minimum(path.slot_distances, d_t)
        self._pi_sink += d_t

        for j, i in zip(path.slots, path.agents):
            old = int(self._assign[i])
            if old >= 0:
                self._members[old].remove(i)
            self._assign[i] = j
            bisect.insort(self._members[j], i)
        self._load[path.slots[-1]] += 1
        self.path_costs.append(path.cost)

    def exclusion_gain(self, agent: int) -> float:
        """
        Cuánto ganan los demás si el agente deja su bloque, sobre la red ya óptima.

        Si el bloque tenía cupo o el agente no estaba asignado, nadie gana nada.
        Si estaba lleno, el nuevo óptimo sale de cancelar un único ciclo que
        pasa por el arco bloque→sumidero recién liberado: alguien entra al
        bloque (desde otro bloque o desde la fuente) y la cadena de movimientos
        termina liberando un cupo en otro bloque. Se busca con un Dijkstra
        desde el sumidero; el único arco con costo reducido posiblemente
        negativo es sumidero→fuente, y solo aparece al inicio del camino.
        """
        j = int(self._assign[agent])
        if j < 0 or self._load[j] < self.k:
            return 0.0

        m = self.m
        pi_slot = self._pi_slot
        dist = np.full(m, INF)
        free = self._assign < 0
        if free.any():
            # sumidero → fuente → agente libre → bloque
            dist = (self._cost[free].min(axis=0) + self._pi_sink - self._pi_source) - pi_slot
        # sumidero → bloque con carga (arco inverso)
        loaded = self._load > 0
        loaded[j] = False
        dist = np.where(loaded, np.minimum(dist, self._pi_sink - pi_slot), dist)

        done = np.zeros(m, dtype=bool)
        while True:
            cand = np.where(done, INF, dist)
            a = int(cand.argmin())
            if a == j or cand[a] == INF:
                break
            done[a] = True
            members = self._members[a]
            if not members:
                continue
            vals = self._value[np.asarray(members, dtype=np.int64)]
            w = (vals[:, a] + pi_slot[a])[:, None] - vals - pi_slot[None, :]
            new = dist[a] + w.min(axis=0)
            dist = np.where((new < dist) & ~done, new, dist)

        cycle = (pi_slot[j] - self._pi_sink) + dist[j]
        return max(0.0, -float(cycle))

    def allocation(self) -> Allocation:
        return Allocation(tuple(None if a < 0 else int(a) for a in self._assign))


def build_network(instance: Instance) -> FlowNetwork:
    return FlowNetwork(instance)


def solve_network(instance: Instance) -> FlowNetwork:
    """
    Red en el óptimo: asignación factible de bienestar máximo con potenciales válidos.

    Aumenta mientras el camino más corto tenga costo ≤ 0: con valoraciones
    no negativas, los aumentos de costo cero no bajan el bienestar y
    maximizan la cantidad de agentes asignados.
    """
    net = build_network(instance)
    last = -INF
    while True:
        path = net.shortest_path()
        if path is None or path.cost > 0:
            break
        assert path.cost >= last - settings.TOLERANCE * max(1.0, abs(last)), (
            f"Costo de camino decreciente: {path.cost} < {last}"
        )
        last = path.cost
        net.augment(path)
        if settings.CHECK_FLOW and not net.check_reduced_costs():
            raise AssertionError("Costo reducido negativo tras aumentar.")

    log.debug("Flujo n=%s m=%s k=%s: %s aumentos", instance.n, instance.m, instance.k,
              len(net.path_costs))
    return net


def solve(instance: Instance) -> Allocation:
    return solve_network(instance).allocation()


def solve_with_delays(instance: Instance) -> tuple[Allocation, tuple]:
    """Asignación óptima y la externalidad de cada agente, reutilizando la misma red."""
    net = solve_network(instance)
    return net.allocation(), tuple(net.exclusion_gain(i) for i in range(instance.n))


def solve_excluding(instance: Instance, excluded: int) -> Allocation:
    """Óptimo de la instancia sin el agente, reportado en la indexación original."""
    excluded = instance.check_agent(excluded)
    sub = solve(instance.without(excluded)).assignment
    return Allocation(sub[:excluded] + (None,) + sub[excluded:])
