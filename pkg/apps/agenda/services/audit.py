# apps/agenda/services/audit.py
import logging
from dataclasses import dataclass, field

import numpy as np

from apps.agenda.mecanismo import Instance, MechanismConfig, payoff, run_period, validate, welfare
from apps.agenda.mecanismo.engines import oracle

logger = logging.getLogger(__name__)


@dataclass
class AuditReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        logger.error(msg)
        self.failures.append(msg)


def random_instance(rng: np.random.Generator, max_n: int = 8, max_m: int = 4,
                    max_k: int = 2, high: float = 10.0) -> Instance:
    n = int(rng.integers(0, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    k = int(rng.integers(1, max_k + 1))
    return Instance(m, k, rng.uniform(0.0, high, size=(n, m)))


def check_oracle_equivalence(count: int, rng: np.random.Generator) -> AuditReport:
    """El solver de flujo alcanza exactamente el bienestar del oráculo en instancias chicas."""
    report = AuditReport()
    for t in range(count):
        instance = random_instance(rng)
        allocation = run_period(instance, MechanismConfig(compute_delays=False)).allocation
        if validate(instance, allocation):
            report.fail(f"#{t}: asignación de flujo infactible")
            continue
        exact = oracle.solve_exact(instance)[1]
        got = welfare(instance, allocation)
        if got != exact:
            report.fail(f"#{t}: flujo={got!r} oráculo={exact!r} (n={instance.n} m={instance.m} k={instance.k})")
        report.checked += 1
    logger.info("Equivalencia con oráculo: %s instancias, %s fallas", report.checked, len(report.failures))
    return report


def check_incentives(count: int, rng: np.random.Generator, tol: float = 1e-9,
                     max_n: int = 6, max_m: int = 3) -> AuditReport:
    """
    Racionalidad individual y demoras no negativas (nulas para los no
    asignados) para todos los agentes; para un agente al azar, que un reporte
    alternativo aleatorio no le mejora el pago verdadero.
    """
    report = AuditReport()
    for t in range(count):
        instance = random_instance(rng, max_n=max_n, max_m=max_m)
        if instance.n == 0:
            continue
        truthful = run_period(instance)
        for i in range(instance.n):
            if float(payoff(instance, truthful, i)) < -tol:
                report.fail(f"#{t}: agente {i} con pago negativo {float(payoff(instance, truthful, i))!r}")
            if truthful.delays[i] < -tol or (truthful.assignment[i] is None and truthful.delays[i] > tol):
                report.fail(f"#{t}: agente {i} con demora {truthful.delays[i]!r}")

        i = int(rng.integers(0, instance.n))
        lie = run_period(instance.with_report(i, rng.uniform(0.0, 10.0, size=instance.m)))
        honest = float(payoff(instance, truthful, i))
        # El pago del reporte falso se evalúa con las valoraciones verdaderas.
        deviated = float(payoff(instance, lie, i))
        if deviated > honest + tol * max(1.0, abs(honest)):
            report.fail(f"#{t}: agente {i} gana mintiendo ({deviated!r} > {honest!r})")
        report.checked += 1
    logger.info("Incentivos: %s instancias, %s fallas", report.checked, len(report.failures))
    return report
