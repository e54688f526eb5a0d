# =====================================================================
# IMPORTS Y BASE
# =====================================================================
from pathlib import Path
import os
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


def _env_list(name: str, default: list[int]) -> list[int]:
    raw = os.environ.get(name)
    if not raw:
        return list(default)
    return [int(x) for x in raw.split(",") if x.strip()]


# =====================================================================
# CONFIGURACIÓN GENERAL
# =====================================================================
DEBUG = os.environ.get("DEBUG", "0") == "1"
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "agenda-local-only-not-a-secret")
ALLOWED_HOSTS = ["localhost", "127.0.0.1"]

# =====================================================================
# APPS
# =====================================================================
DJANGO_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
]

THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    "apps.agenda",
    "apps.experimentos",
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# =====================================================================
# BASE DE DATOS
# =====================================================================
# El mecanismo no persiste nada; la base existe solo para que Django arranque.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# =====================================================================
# INTERNACIONALIZACIÓN
# =====================================================================
LANGUAGE_CODE = "es-cl"
TIME_ZONE = "America/Santiago"
USE_I18N = True
USE_TZ = True

# =====================================================================
# LOGGING
# =====================================================================
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "simple"},
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": os.environ.get("AGENDA_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}

# =====================================================================
# EXPERIMENTOS (valores por defecto, sobrescribibles por entorno)
# =====================================================================
AGENDA = {
    "M": _env_int("AGENDA_M", 5),
    "K": _env_int("AGENDA_K", 4),
    "DELTA": _env_float("AGENDA_DELTA", 0.65),
    "SEED": _env_int("AGENDA_SEED", 20200701),
    "REGIME": os.environ.get("AGENDA_REGIME", "identical"),
    "TRIAL_DIVISOR": _env_int("AGENDA_TRIAL_DIVISOR", 1),
    "CAPACITIES": _env_list("AGENDA_CAPACITIES", [24, 30]),
    "DAYS": _env_int("AGENDA_DAYS", 31),
    "OUTPUT_DIR": os.environ.get("AGENDA_OUTPUT_DIR", str(BASE_DIR / "resultados")),
    "BENCH_K": _env_int("AGENDA_BENCH_K", 12),
    "BENCH_M": _env_list("AGENDA_BENCH_M", [1, 2, 4, 6, 8, 10, 12, 14]),
    "BENCH_TRIALS": _env_int("AGENDA_BENCH_TRIALS", 1),
}
