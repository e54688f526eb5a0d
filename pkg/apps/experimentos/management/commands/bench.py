from apps.experimentos.services.bench import run_bench, write_bench

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Mide el tiempo del mecanismo completo con n = m·k para varios m."
    experiment = "bench"
    config_fields = ExperimentCommand.config_fields + ("bench_k", "bench_m", "bench_trials")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--bench-k", type=int, help="Capacidad fija (por defecto 12).")
        parser.add_argument("--bench-m", type=int, nargs="+", help="Valores de m a medir.")
        parser.add_argument("--bench-trials", type=int, help="Repeticiones por m.")

    def run(self, config, opts):
        result = run_bench(config)
        self.stdout.write(f"Pendiente log-log: {result.slope:.2f}")
        return [write_bench(config, result)]
