import numpy as np
from django.test import SimpleTestCase

from apps.agenda.mecanismo import ArrivalOrder, Instance, InstanceError, fcfs, sequential_dictator, validate, welfare
from apps.agenda.mecanismo.engines import flow
from apps.agenda.services.audit import random_instance

TWO_BY_TWO = Instance(m=2, k=1, valuations=[[51, 50], [50, 0]])


class FcfsTests(SimpleTestCase):
    def test_capacidad_uno_gana_el_que_llega_primero(self):
        inst = Instance(m=1, k=1, valuations=[[4], [4]])
        outcome = fcfs(inst, ArrivalOrder((1, 0)))
        self.assertEqual(outcome.assignment, (None, 0))
        self.assertEqual(outcome.delays, (0.0, 0.0))

    def test_ejemplo_en_orden_de_llegada(self):
        # B no reserva un bloque que vale cero para él.
        outcome = fcfs(TWO_BY_TWO, ArrivalOrder.identity(2))
        self.assertEqual(outcome.assignment, (0, None))
        self.assertEqual(outcome.welfare, 51.0)

    def test_un_agente_toma_su_favorito(self):
        inst = Instance(m=3, k=1, valuations=[[1, 3, 2]])
        self.assertEqual(fcfs(inst, ArrivalOrder.identity(1)).assignment, (1,))

    def test_empate_va_al_bloque_de_menor_indice(self):
        inst = Instance(m=3, k=1, valuations=[[2, 2, 1]])
        self.assertEqual(fcfs(inst, ArrivalOrder.identity(1)).assignment, (0,))

    def test_orden_que_no_es_permutacion(self):
        with self.assertRaises(InstanceError):
            fcfs(TWO_BY_TWO, ArrivalOrder((0, 0)))

    def test_prefijo_del_orden_no_cambia_asignaciones(self):
        rng = np.random.default_rng(4)
        v = rng.uniform(0, 10, size=(9, 3))
        order = ArrivalOrder.random(9, rng)
        full = fcfs(Instance(m=3, k=2, valuations=v), order)
        for p in range(1, 10):
            prefix = order.order[:p]
            sub = fcfs(Instance(m=3, k=2, valuations=v[list(prefix)]), ArrivalOrder.identity(p))
            self.assertEqual(sub.assignment, tuple(full.assignment[i] for i in prefix))


class SequentialDictatorTests(SimpleTestCase):
    def test_ejemplo_por_urgencia(self):
        outcome = sequential_dictator(TWO_BY_TWO, [51, 50])
        self.assertEqual(outcome.assignment, (0, 1))
        self.assertEqual(outcome.welfare, 51.0)

    def test_urgencia_igual_es_fcfs_en_orden(self):
        rng = np.random.default_rng(6)
        inst = Instance(m=3, k=2, valuations=rng.uniform(0.1, 10, size=(8, 3)))
        self.assertEqual(
            sequential_dictator(inst, [2] * 8).assignment,
            fcfs(inst, ArrivalOrder.identity(8)).assignment,
        )

    def test_urgencia_igual_con_ceros_difiere_de_fcfs(self):
        # B solo valora el bloque 0; el dictador igual le da el bloque 1.
        self.assertEqual(sequential_dictator(TWO_BY_TWO, [2, 2]).assignment, (0, 1))
        self.assertEqual(fcfs(TWO_BY_TWO, ArrivalOrder.identity(2)).assignment, (0, None))
        self.assertEqual(sequential_dictator(TWO_BY_TWO, [2, 2]).welfare,
                         fcfs(TWO_BY_TWO, ArrivalOrder.identity(2)).welfare)

    def test_mas_urgente_elige_primero(self):
        inst = Instance(m=2, k=1, valuations=[[1, 0.65], [3, 1.95]])
        self.assertEqual(sequential_dictator(inst, [1, 3]).assignment, (1, 0))

    def test_un_agente(self):
        inst = Instance(m=2, k=1, valuations=[[1, 5]])
        self.assertEqual(sequential_dictator(inst, [1]).assignment, (1,))

    def test_largo_de_urgencias(self):
        with self.assertRaises(InstanceError):
            sequential_dictator(TWO_BY_TWO, [1])


class BaselineBoundTests(SimpleTestCase):
    def test_factibles_y_bajo_el_optimo(self):
        rng = np.random.default_rng(27)
        for _ in range(300):
            inst = random_instance(rng, max_n=10, max_m=4, max_k=3)
            if rng.random() < 0.5:
                inst = Instance(inst.m, inst.k, np.where(rng.random(inst.valuations.shape) < 0.3, 0.0, inst.valuations))
            best = welfare(inst, flow.solve(inst))
            outcomes = (
                fcfs(inst, ArrivalOrder.random(inst.n, rng)),
                sequential_dictator(inst, rng.integers(1, 4, size=inst.n)),
            )
            for outcome in outcomes:
                self.assertEqual(validate(inst, outcome.allocation), ())
                self.assertLessEqual(outcome.welfare, best + 1e-9)
