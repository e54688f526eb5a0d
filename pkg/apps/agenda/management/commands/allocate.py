import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError, ValidationError

from apps.agenda.mecanismo import (
    InfeasibleAllocationError,
    InstanceError,
    InstanceTooLargeError,
    MechanismConfig,
    run_period,
)
from apps.agenda.serializers import load_instance, render_outcome
from apps.agenda.utils import atomic_write_bytes

log = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Ejecuta el mecanismo sobre una instancia JSON y escribe asignación, demoras y bienestar."

    def add_arguments(self, parser):
        parser.add_argument("instance", help="JSON con m, k y valuations ('-' lee stdin).")
        parser.add_argument("--output", "-o", help="Archivo de salida (por defecto stdout).")
        parser.add_argument("--oracle", action="store_true",
                            help="Usa el solver exhaustivo (solo instancias chicas).")

    def handle(self, *args, **opts):
        source = opts["instance"]
        try:
            raw = sys.stdin.buffer.read() if source == "-" else Path(source).read_bytes()
        except OSError as e:
            raise CommandError(f"No se pudo leer {source}: {e}", returncode=2)

        try:
            instance = load_instance(raw)
        except (ParseError, ValidationError, InstanceError) as e:
            detail = getattr(e, "detail", e)
            raise CommandError(f"Instancia inválida: {detail}", returncode=2)

        try:
            outcome = run_period(instance, MechanismConfig(use_oracle=opts["oracle"]))
        except InstanceTooLargeError as e:
            raise CommandError(str(e), returncode=2)
        except InfeasibleAllocationError as e:
            log.error("%s", e)
            raise CommandError("El resultado no pasó la validación de factibilidad.", returncode=3)

        payload = render_outcome(outcome)
        if opts["output"]:
            path = atomic_write_bytes(Path(opts["output"]), payload)
            self.stdout.write(self.style.SUCCESS(
                f"n={instance.n} bienestar={outcome.welfare:.6f} → {path}"
            ))
        else:
            self.stdout.write(payload.decode("utf-8"))
