import math

from apps.experimentos.services.mispriority import run_mispriority, write_mispriority

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = "Mala priorización media de FCFS y del mecanismo, para cada n."
    experiment = "mispriority"

    def run(self, config, opts):
        result = run_mispriority(config)
        if not math.isnan(result.spearman):
            self.stdout.write(f"Spearman (FCFS vs n): {result.spearman:.3f}")
        return [write_mispriority(config, result)]
