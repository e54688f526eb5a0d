from pathlib import Path

from apps.experimentos.services.congestion import run_congestion, write_congestion

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Ocupación por hora sin agendamiento y con agendamiento de capacidad k, más clientes descartados."
    experiment = "congestion"
    config_fields = ExperimentCommand.config_fields + ("footfall", "capacities", "days", "with_delays")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--footfall", help="CSV con un timestamp ISO-8601 por línea.")
        parser.add_argument("--capacities", type=int, nargs="+", help="Capacidades a simular (ej. 24 30).")
        parser.add_argument("--days", type=int, help="Días sintéticos cuando no hay --footfall.")
        parser.add_argument("--with-delays", action="store_true", default=None,
                            help="Calcula las demoras de cada día (más lento).")
        parser.add_argument("--trace", action="store_true", help="Escribe trace_k<cap>.json por capacidad.")
        parser.add_argument("--export-footfall", help="Guarda las llegadas usadas como CSV de timestamps.")

    def run(self, config, opts):
        export = Path(opts["export_footfall"]) if opts.get("export_footfall") else None
        results = run_congestion(config, trace=bool(opts.get("trace")), export_footfall=export)
        for r in results:
            self.stdout.write(
                f"k={r.capacity}: descartados={r.total_dropped} "
                f"reducción en horas punta={100 * r.rush_reduction():.1f}%"
            )
        paths = write_congestion(config, results)
        if export is not None:
            paths.append(export)
        return paths
