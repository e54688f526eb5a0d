import time
from unittest import mock

import numpy as np
from django.test import SimpleTestCase, tag

from apps.agenda.mecanismo import (
    AgentIndexError,
    Instance,
    MechanismConfig,
    delay_for_agent,
    payoff,
    run_period,
    sequential_dictator,
)
from apps.agenda.mecanismo.engines import FlowBackend, flow, get_backend
from apps.agenda.services.audit import check_incentives, random_instance

TWO_BY_TWO = Instance(m=2, k=1, valuations=[[51, 50], [50, 0]])
THREE_CLASSES = Instance(m=2, k=1, valuations=[[3, 3 * 0.65], [2, 2 * 0.65], [1, 0.65]])


def _int_instance(rng, max_n=8, max_m=4, max_k=3):
    # Valores enteros: escalarlos por un entero no introduce redondeo.
    n, m, k = int(rng.integers(0, max_n + 1)), int(rng.integers(1, max_m + 1)), int(rng.integers(1, max_k + 1))
    return m, k, rng.integers(0, 21, size=(n, m)).astype(float)


class RunPeriodTests(SimpleTestCase):
    def test_ejemplo_de_dos_agentes(self):
        outcome = run_period(TWO_BY_TWO)
        self.assertEqual(outcome.assignment, (1, 0))
        self.assertEqual(outcome.delays, (0.0, 1.0))
        self.assertEqual(outcome.welfare, 100.0)
        self.assertEqual(float(payoff(TWO_BY_TWO, outcome, 1)), 49.0)

    def test_ejemplo_contra_el_oraculo(self):
        flow_outcome = run_period(TWO_BY_TWO)
        oracle_outcome = run_period(TWO_BY_TWO, MechanismConfig(use_oracle=True))
        self.assertEqual(flow_outcome, oracle_outcome)

    def test_supera_al_dictador_secuencial(self):
        dictator = sequential_dictator(TWO_BY_TWO, urgencies=[51, 50])
        self.assertEqual(dictator.welfare, 51.0)
        self.assertGreater(run_period(TWO_BY_TWO).welfare, dictator.welfare)

    def test_un_agente_sin_demora(self):
        outcome = run_period(Instance(m=3, k=1, valuations=[[1, 4, 2]]))
        self.assertEqual(outcome.assignment, (1,))
        self.assertEqual(outcome.delays, (0.0,))

    def test_tres_clases(self):
        outcome = run_period(THREE_CLASSES)
        self.assertEqual(outcome.assignment, (0, 1, None))
        # W(sin 0) = 2 + 0.65, W(sin 1) = 3 + 0.65, W(sin 2) = 4.3
        for got, expected in zip(outcome.delays, (1.35, 0.65, 0.0)):
            self.assertAlmostEqual(got, expected, places=9)
        oracle = run_period(THREE_CLASSES, MechanismConfig(use_oracle=True))
        for got, expected in zip(outcome.delays, oracle.delays):
            self.assertAlmostEqual(got, expected, places=9)

    def test_preferencias_distintas_sin_competencia(self):
        inst = Instance(m=3, k=1, valuations=[[5, 0, 0], [0, 5, 0], [0, 0, 5]])
        outcome = run_period(inst)
        self.assertEqual(outcome.assignment, (0, 1, 2))
        self.assertEqual(outcome.delays, (0.0, 0.0, 0.0))

    def test_sin_demoras_si_se_desactivan(self):
        outcome = run_period(TWO_BY_TWO, MechanismConfig(compute_delays=False))
        self.assertEqual(outcome.delays, (0.0, 0.0))
        self.assertEqual(outcome.welfare, 100.0)

    def test_instancia_vacia(self):
        outcome = run_period(Instance(m=2, k=1, valuations=[]))
        self.assertEqual((outcome.assignment, outcome.delays, outcome.welfare), ((), (), 0.0))

    def test_determinista(self):
        rng = np.random.default_rng(8)
        inst = random_instance(rng, max_n=10, max_m=4, max_k=3)
        self.assertEqual(run_period(inst), run_period(inst))

    def test_demoras_coinciden_con_el_oraculo(self):
        rng = np.random.default_rng(41)
        for _ in range(150):
            inst = random_instance(rng, max_n=6, max_m=3, max_k=2)
            flow_outcome = run_period(inst)
            oracle_outcome = run_period(inst, MechanismConfig(use_oracle=True))
            np.testing.assert_allclose(flow_outcome.delays, oracle_outcome.delays, atol=1e-9)
            self.assertAlmostEqual(flow_outcome.welfare, oracle_outcome.welfare, places=9)

    def test_demoras_desde_la_red_optima_coinciden(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            inst = random_instance(rng, max_n=10, max_m=4, max_k=3)
            fresh = run_period(inst)
            reused = run_period(inst, MechanismConfig(reuse_network=True))
            self.assertEqual(reused.allocation, fresh.allocation)
            np.testing.assert_allclose(reused.delays, fresh.delays, atol=1e-9)

    def test_por_defecto_resuelve_una_vez_por_agente(self):
        inst = Instance(m=2, k=2, valuations=np.arange(12.0).reshape(6, 2))
        with mock.patch.object(FlowBackend, "solve_excluding", wraps=flow.solve_excluding) as excluding:
            run_period(inst)
        self.assertEqual(excluding.call_count, 6)
        self.assertEqual(sorted(c.args[1] for c in excluding.call_args_list), list(range(6)))

    def test_con_red_reutilizada_no_resuelve_exclusiones(self):
        inst = Instance(m=2, k=2, valuations=np.arange(12.0).reshape(6, 2))
        with mock.patch.object(FlowBackend, "solve_excluding", wraps=flow.solve_excluding) as excluding:
            run_period(inst, MechanismConfig(reuse_network=True))
        self.assertEqual(excluding.call_count, 0)

    def test_escala_la_asignacion_y_las_demoras(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            inst = Instance(*_int_instance(rng))
            base = run_period(inst)
            for factor in (3.0, 7.0, 0.5):
                scaled = run_period(inst.scaled(factor))
                self.assertEqual(scaled.allocation, base.allocation)
                self.assertEqual(scaled.welfare, factor * base.welfare)
                np.testing.assert_allclose(scaled.delays, np.multiply(factor, base.delays), atol=1e-9)


class DelayForAgentTests(SimpleTestCase):
    def test_agente_desplazado_paga_su_externalidad(self):
        full = get_backend().solve(TWO_BY_TWO)
        self.assertEqual(delay_for_agent(TWO_BY_TWO, 1, full), 1.0)
        self.assertEqual(delay_for_agent(TWO_BY_TWO, 0, full), 0.0)

    def test_agente_no_asignado_no_paga(self):
        rng = np.random.default_rng(17)
        seen = 0
        for _ in range(200):
            inst = random_instance(rng, max_n=8, max_m=3, max_k=2)
            full = get_backend().solve(inst)
            for i, slot in enumerate(full.assignment):
                if slot is None:
                    self.assertLessEqual(delay_for_agent(inst, i, full), 1e-9)
                    seen += 1
        self.assertGreater(seen, 0)

    def test_indice_invalido(self):
        full = get_backend().solve(TWO_BY_TWO)
        with self.assertRaises(AgentIndexError):
            delay_for_agent(TWO_BY_TWO, 2, full)


class IncentiveTests(SimpleTestCase):
    def test_racionalidad_y_veracidad_en_muestra_chica(self):
        report = check_incentives(300, np.random.default_rng(1))
        self.assertTrue(report.ok, report.failures[:5])

    def test_mentir_con_la_fila_del_otro_no_conviene(self):
        # B reporta lo mismo que A para quedarse con el bloque 0.
        lie = run_period(TWO_BY_TWO.with_report(1, [51, 50]))
        honest = run_period(TWO_BY_TWO)
        self.assertLessEqual(float(payoff(TWO_BY_TWO, lie, 1)), float(payoff(TWO_BY_TWO, honest, 1)))


@tag("acceptance")
class MechanismAcceptanceTests(SimpleTestCase):
    def test_veracidad_y_racionalidad_individual(self):
        report = check_incentives(2600, np.random.default_rng(20200701))
        self.assertGreaterEqual(report.checked, 2000)
        self.assertTrue(report.ok, report.failures[:5])

    def test_escala_m14_k12(self):
        rng = np.random.default_rng(14)
        classes = rng.integers(1, 4, size=168)
        prefs = np.array([rng.permutation(14) for _ in range(168)])
        v = np.empty((168, 14))
        for i in range(168):
            v[i, prefs[i]] = classes[i] * 0.65 ** np.arange(14)
        inst = Instance(m=14, k=12, valuations=v)
        started = time.perf_counter()
        # Asignación más las 168 soluciones sin cada agente.
        outcome = run_period(inst)
        self.assertLess(time.perf_counter() - started, 5.0)
        self.assertEqual(len(outcome.delays), 168)
