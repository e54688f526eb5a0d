from apps.experimentos.services.prioritization import run_prioritization, write_prioritization

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Rango medio del bloque asignado y demora media por clase de urgencia, para cada n."
    experiment = "prioritization"

    def run(self, config, opts):
        return write_prioritization(config, run_prioritization(config))
