# apps/experimentos/management/commands/_base.py
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError, ValidationError

from apps.experimentos.errors import FootfallParseError, InvariantError
from apps.experimentos.services.config import ExperimentConfig, build_config

log = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    """
    Flags comunes de los experimentos. Cada flag omitida toma el valor del
    archivo --config, y si tampoco está ahí, el de settings.AGENDA.
    """

    experiment = ""
    # Campos de ExperimentConfig que se leen de opts con el mismo nombre.
    config_fields = ("seed", "output_dir", "m", "k", "n_min", "n_max", "delta", "trial_divisor", "regime")

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Archivo JSON con valores de ExperimentConfig.")
        parser.add_argument("--seed", type=int, help="Semilla raíz.")
        parser.add_argument("--output-dir", help="Directorio de los CSV.")
        parser.add_argument("--m", type=int, help="Cantidad de bloques.")
        parser.add_argument("--k", type=int, help="Capacidad por bloque.")
        parser.add_argument("--n-min", type=int, help="Menor n del barrido (mínimo 2).")
        parser.add_argument("--n-max", type=int, help="Mayor n del barrido (por defecto ⌈1.1·m·k⌉).")
        parser.add_argument("--delta", type=float, help="Factor de decaimiento por rango, en (0, 1).")
        parser.add_argument("--trial-divisor", type=int, help="Divide las 10n pruebas por n.")
        parser.add_argument("--regime", help="Preferencias: identical o random.")

    def overrides(self, opts) -> dict:
        return {name: opts.get(name) for name in self.config_fields}

    def load_config(self, opts) -> ExperimentConfig:
        config_file = Path(opts["config"]) if opts.get("config") else None
        try:
            return build_config(self.experiment, self.overrides(opts), config_file)
        except OSError as e:
            raise CommandError(f"No se pudo leer {config_file}: {e}", returncode=2)
        except (ParseError, ValidationError) as e:
            raise CommandError(f"Configuración inválida: {getattr(e, 'detail', e)}", returncode=2)

    def handle(self, *args, **opts):
        config = self.load_config(opts)
        log.info("Experimento %s (semilla %s) → %s", self.experiment, config.seed, config.output_dir)
        try:
            paths = self.run(config, opts)
        except FootfallParseError as e:
            raise CommandError(f"Archivo de llegadas inválido: {e}", returncode=2)
        except OSError as e:
            raise CommandError(f"No se pudo leer o escribir: {e}", returncode=2)
        except InvariantError as e:
            log.error("%s", e)
            raise CommandError(f"Falla interna: {e}", returncode=3)

        for path in paths:
            self.stdout.write(self.style.SUCCESS(f"Escrito {path}"))

    def run(self, config: ExperimentConfig, opts) -> list[Path]:
        raise NotImplementedError
