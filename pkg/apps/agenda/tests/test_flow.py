import time

import numpy as np
from django.test import SimpleTestCase, tag

from apps.agenda.mecanismo import Allocation, Instance, validate, welfare
from apps.agenda.mecanismo.engines import flow, oracle
from apps.agenda.mecanismo.welfare import welfare_excluding
from apps.agenda.services.audit import check_oracle_equivalence, random_instance

TWO_BY_TWO = Instance(m=2, k=1, valuations=[[51, 50], [50, 0]])
THREE_CLASSES = Instance(m=2, k=1, valuations=[[3, 3 * 0.65], [2, 2 * 0.65], [1, 0.65]])


class NetworkTests(SimpleTestCase):
    def test_red_minima(self):
        net = flow.build_network(Instance(m=1, k=1, valuations=[[7]]))
        arcs = net.arcs()
        self.assertEqual(len(arcs), 3)
        self.assertEqual(net.node_count, 4)
        source_arc, bid, sink_arc = arcs
        self.assertEqual((source_arc.tail, source_arc.head, source_arc.capacity), (0, 1, 1))
        self.assertEqual((bid.tail, bid.head, bid.cost), (1, 2, -7.0))
        self.assertEqual((sink_arc.tail, sink_arc.head, sink_arc.capacity), (2, 3, 1))

    def test_arcos_del_ejemplo(self):
        net = flow.build_network(TWO_BY_TWO)
        self.assertEqual(len(net.arcs()), 8)
        self.assertEqual(net.arc_count, 8)

    def test_sin_agentes(self):
        inst = Instance(m=3, k=2, valuations=[])
        net = flow.build_network(inst)
        self.assertEqual(net.node_count, 5)
        self.assertEqual(len(net.arcs()), 3)
        self.assertEqual(flow.solve(inst), Allocation(()))

    def test_potenciales_iniciales_dejan_costos_reducidos_no_negativos(self):
        net = flow.build_network(THREE_CLASSES)
        self.assertTrue(net.check_reduced_costs())
        self.assertTrue(net.check_conservation())

    def test_invariantes_tras_cada_aumento(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            inst = random_instance(rng, max_n=9, max_m=4, max_k=3)
            net = flow.build_network(inst)
            while True:
                path = net.shortest_path()
                if path is None or path.cost > 0:
                    break
                net.augment(path)
                self.assertTrue(net.check_conservation())
                self.assertTrue(net.check_reduced_costs(1e-7))

    def test_costos_de_camino_no_decrecen(self):
        rng = np.random.default_rng(11)
        inst = Instance(m=4, k=3, valuations=rng.uniform(0, 10, size=(15, 4)))
        net = flow.build_network(inst)
        while (path := net.shortest_path()) is not None and path.cost <= 0:
            net.augment(path)
        costs = net.path_costs
        self.assertTrue(all(b >= a - 1e-9 for a, b in zip(costs, costs[1:])))


class SolveTests(SimpleTestCase):
    def test_ejemplo_de_dos_agentes(self):
        alloc = flow.solve(TWO_BY_TWO)
        self.assertEqual(alloc.assignment, (1, 0))
        self.assertEqual(welfare(TWO_BY_TWO, alloc), 100.0)

    def test_un_agente_toma_su_favorito(self):
        self.assertEqual(flow.solve(Instance(m=2, k=4, valuations=[[5, 3]])).assignment, (0,))

    def test_tres_clases_dejan_fuera_al_menos_urgente(self):
        alloc = flow.solve(THREE_CLASSES)
        self.assertEqual(alloc.assignment, (0, 1, None))
        self.assertAlmostEqual(welfare(THREE_CLASSES, alloc), 4.3)

    def test_ceros_no_bajan_el_bienestar(self):
        inst = Instance(m=2, k=1, valuations=np.zeros((3, 2)))
        alloc = flow.solve(inst)
        self.assertEqual(validate(inst, alloc), ())
        self.assertEqual(welfare(inst, alloc), 0.0)

    def test_escalar_devuelve_la_misma_asignacion(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            inst = random_instance(rng, max_n=10, max_m=4, max_k=3)
            base = flow.solve(inst)
            for factor in (4.0, 0.25):
                scaled = inst.scaled(factor)
                self.assertEqual(flow.solve(scaled), base)
                self.assertEqual(welfare(scaled, flow.solve(scaled)), factor * welfare(inst, base))
            ints = Instance(inst.m, inst.k, np.rint(inst.valuations))
            for factor in (3.0, 5.0, 11.0):
                self.assertEqual(flow.solve(ints.scaled(factor)), flow.solve(ints))

    def test_excluyendo_un_agente(self):
        alloc = flow.solve_excluding(TWO_BY_TWO, 0)
        self.assertEqual(alloc.assignment, (None, 0))
        self.assertEqual(welfare(TWO_BY_TWO, alloc), 50.0)

    def test_excluyendo_al_unico_agente(self):
        inst = Instance(m=2, k=1, valuations=[[5, 3]])
        alloc = flow.solve_excluding(inst, 0)
        self.assertEqual(alloc.assignment, (None,))
        self.assertEqual(welfare(inst, alloc), 0.0)

    def test_excluir_a_un_no_asignado_no_cambia_el_bienestar(self):
        rng = np.random.default_rng(5)
        checked = 0
        for _ in range(200):
            inst = random_instance(rng, max_n=8, max_m=3, max_k=2)
            full = flow.solve(inst)
            for i, slot in enumerate(full.assignment):
                if slot is None:
                    self.assertAlmostEqual(
                        welfare(inst, flow.solve_excluding(inst, i)), welfare(inst, full), places=9
                    )
                    checked += 1
        self.assertGreater(checked, 0)

    def test_ganancia_de_exclusion_igual_a_resolver_sin_el_agente(self):
        rng = np.random.default_rng(31)
        for _ in range(150):
            inst = random_instance(rng, max_n=10, max_m=4, max_k=3)
            net = flow.solve_network(inst)
            full = net.allocation()
            for i in range(inst.n):
                fresh = welfare(inst, flow.solve_excluding(inst, i)) - welfare_excluding(inst, full, i)
                self.assertAlmostEqual(net.exclusion_gain(i), max(0.0, fresh), places=9)

    def test_ganancia_del_ejemplo(self):
        net = flow.solve_network(TWO_BY_TWO)
        self.assertEqual(net.exclusion_gain(0), 0.0)
        self.assertEqual(net.exclusion_gain(1), 1.0)

    def test_coincide_con_el_oraculo(self):
        rng = np.random.default_rng(2020)
        for _ in range(300):
            inst = random_instance(rng)
            alloc = flow.solve(inst)
            self.assertEqual(validate(inst, alloc), ())
            self.assertEqual(welfare(inst, alloc), oracle.solve_exact(inst)[1])


@tag("acceptance")
class SolverAcceptanceTests(SimpleTestCase):
    def test_diez_mil_instancias_contra_el_oraculo(self):
        started = time.perf_counter()
        report = check_oracle_equivalence(10_000, np.random.default_rng(20200701))
        self.assertTrue(report.ok, report.failures[:5])
        self.assertEqual(report.checked, 10_000)
        self.assertLess(time.perf_counter() - started, 60.0)
