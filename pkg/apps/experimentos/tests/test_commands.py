import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.experimentos.errors import InvariantError


class ExperimentCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def call(self, name, *args, **opts):
        out = StringIO()
        call_command(name, *args, "--output-dir", str(self.dir), stdout=out, **opts)
        return out.getvalue()

    def test_prioritization(self):
        out = self.call("prioritization", "--m", "2", "--k", "1", "--trial-divisor", "4")
        self.assertIn("priority_delay.csv", out)
        self.assertEqual(sorted(p.name for p in self.dir.iterdir()),
                         ["prioritization_identical.csv", "prioritization_random.csv", "priority_delay.csv"])

    def test_mispriority_con_archivo_de_configuracion(self):
        conf = self.dir / "conf.json"
        conf.write_text(json.dumps({"m": 2, "k": 2, "trial_divisor": 3}), encoding="utf-8")
        self.call("mispriority", "--config", str(conf), "--n-max", "3")
        lines = (self.dir / "mispriority.csv").read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "n,mechanism,mean_mispriority")
        self.assertEqual(len(lines), 1 + 2 * 2)

    def test_congestion(self):
        out = self.call("congestion", "--days", "1", "--capacities", "40", "--trace")
        self.assertIn("k=40", out)
        self.assertTrue((self.dir / "congestion_k40.csv").exists())
        self.assertTrue((self.dir / "trace_k40.json").exists())

    def test_bench(self):
        out = self.call("bench", "--bench-m", "1", "2", "--bench-k", "2")
        self.assertIn("Pendiente", out)
        self.assertTrue((self.dir / "bench.csv").exists())

    def test_configuracion_invalida(self):
        with self.assertRaises(CommandError) as cm:
            self.call("prioritization", "--delta", "1.5")
        self.assertEqual(cm.exception.returncode, 2)
        self.assertEqual(list(self.dir.iterdir()), [])

    def test_archivo_de_configuracion_inexistente(self):
        with self.assertRaises(CommandError) as cm:
            self.call("bench", "--config", str(self.dir / "no.json"))
        self.assertEqual(cm.exception.returncode, 2)

    def test_llegadas_mal_formadas(self):
        footfall = self.dir / "llegadas.csv"
        footfall.write_text("timestamp\n2020-07-01T23:00:00\n", encoding="utf-8")
        with self.assertRaises(CommandError) as cm:
            self.call("congestion", "--footfall", str(footfall))
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn("Línea 2", str(cm.exception))

    def test_falla_interna(self):
        with mock.patch(
            "apps.experimentos.management.commands.mispriority.run_mispriority",
            side_effect=InvariantError("asignación infactible"),
        ):
            with self.assertRaises(CommandError) as cm:
                self.call("mispriority", "--m", "2", "--k", "1")
        self.assertEqual(cm.exception.returncode, 3)
        self.assertFalse((self.dir / "mispriority.csv").exists())
