import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.agenda.services.audit import check_incentives, check_oracle_equivalence


class Command(BaseCommand):
    help = "Prueba el mecanismo con instancias aleatorias: equivalencia con el oráculo e incentivos."

    def add_arguments(self, parser):
        parser.add_argument("--instances", type=int, default=1000, help="Instancias por verificación.")
        parser.add_argument("--seed", type=int, default=None, help="Semilla (por defecto AGENDA_SEED).")
        parser.add_argument("--skip-incentives", action="store_true",
                            help="Solo compara bienestar contra el oráculo.")

    def handle(self, *args, **opts):
        if opts["instances"] < 1:
            raise CommandError("--instances debe ser positivo.", returncode=2)
        seed = settings.AGENDA["SEED"] if opts["seed"] is None else opts["seed"]
        rng = np.random.default_rng(seed)

        reports = [("oráculo", check_oracle_equivalence(opts["instances"], rng))]
        if not opts["skip_incentives"]:
            reports.append(("incentivos", check_incentives(opts["instances"], rng)))

        failed = False
        for name, report in reports:
            if report.ok:
                self.stdout.write(self.style.SUCCESS(f"{name}: {report.checked} instancias OK"))
            else:
                failed = True
                self.stdout.write(self.style.ERROR(
                    f"{name}: {len(report.failures)} fallas de {report.checked}"
                ))
        if failed:
            raise CommandError("La auditoría encontró violaciones.", returncode=3)
