# apps/experimentos/simgen/footfall.py
"""
Llegadas de clientes a la tienda por bloque horario (7AM a 9PM, 14 bloques).

El perfil por defecto fija los bloques de 5 a 8PM en 38.00, 48.63 y 52.83
clientes y la media de las 14 horas en 26.5. Las 11 horas restantes siguen
una rampa desde 12 a las 7AM hacia la hora punta, con el bloque de 8PM a
medio camino entre 12 y la punta, escaladas para repartir la masa restante.
"""
import csv
import io
import logging
from dataclasses import dataclass
from datetime import date, datetime, time, timedelta
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np
from dateutil.parser import isoparse

from apps.agenda.utils import atomic_write_text
from apps.experimentos.errors import FootfallParseError

from .population import SeedLike

logger = logging.getLogger(__name__)

OPENING_HOUR = 7
SLOT_COUNT = 14
RUSH_HOURS = {10: 38.00, 11: 48.63, 12: 52.83}
HOURLY_MEAN = 26.5
_RAMP_START = 12.0


def slot_labels() -> list[str]:
    return [f"{OPENING_HOUR + h:02d}-{OPENING_HOUR + h + 1:02d}" for h in range(SLOT_COUNT)]


def default_hourly_means() -> tuple:
    shape = np.empty(SLOT_COUNT)
    shape[:10] = np.linspace(_RAMP_START, RUSH_HOURS[10], 11)[:10]
    shape[13] = (_RAMP_START + RUSH_HOURS[12]) / 2

    free = [h for h in range(SLOT_COUNT) if h not in RUSH_HOURS]
    residual = HOURLY_MEAN * SLOT_COUNT - sum(RUSH_HOURS.values())
    means = np.empty(SLOT_COUNT)
    means[free] = shape[free] * residual / shape[free].sum()
    for h, mean in RUSH_HOURS.items():
        means[h] = mean
    means = [float(x) for x in means]
    # La última hora libre se lleva el resto exacto: la suma da 14 · 26.5 sin redondeo.
    means[-1] = HOURLY_MEAN * SLOT_COUNT - sum(means[:-1])
    return tuple(means)


@dataclass(frozen=True)
class FootfallModel:
    hourly_means: tuple = None

    def __post_init__(self):
        means = default_hourly_means() if self.hourly_means is None else tuple(float(x) for x in self.hourly_means)
        if len(means) != SLOT_COUNT:
            raise ValueError(f"Se esperaban {SLOT_COUNT} medias horarias (recibidas {len(means)}).")
        if any(not np.isfinite(x) or x < 0 for x in means):
            raise ValueError("Las medias horarias deben ser finitas y no negativas.")
        object.__setattr__(self, "hourly_means", means)

    @classmethod
    def zeros(cls) -> "FootfallModel":
        return cls((0.0,) * SLOT_COUNT)


def _day_from_counts(counts: Sequence[int]) -> list[int]:
    return np.repeat(np.arange(SLOT_COUNT), counts).tolist()


def gen_footfall(model: FootfallModel, days: int, seed: SeedLike) -> list[list[int]]:
    """Una lista por día con el bloque de llegada de cada cliente, en orden de hora."""
    if days < 1:
        raise ValueError("days debe ser al menos 1.")
    rng = np.random.default_rng(seed)
    counts = rng.poisson(np.asarray(model.hourly_means), size=(days, SLOT_COUNT))
    return [_day_from_counts(row) for row in counts]


def ingest_footfall(source: Union[str, Path, Iterable[str]]) -> tuple[FootfallModel, list[list[int]]]:
    """
    Lee un timestamp ISO-8601 (hora local) por línea; la primera línea puede
    ser un encabezado si no tiene dígitos. Los días sin filas entre el primero y el último
    cuentan como días sin llegadas.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return ingest_footfall(list(fh))

    per_day: dict[date, np.ndarray] = {}
    for lineno, row in enumerate(csv.reader(source), start=1):
        if not row or not row[0].strip():
            continue
        cell = row[0].strip()
        try:
            stamp = isoparse(cell)
        except ValueError as e:
            # Encabezado: solo una primera línea sin dígitos.
            if lineno == 1 and not any(ch.isdigit() for ch in cell):
                continue
            raise FootfallParseError(lineno, f"timestamp ilegible {cell!r} ({e})") from e
        hour = stamp.hour - OPENING_HOUR
        if not 0 <= hour < SLOT_COUNT:
            raise FootfallParseError(lineno, f"{cell} fuera del horario 07:00-21:00")
        per_day.setdefault(stamp.date(), np.zeros(SLOT_COUNT, dtype=np.int64))[hour] += 1

    if not per_day:
        logger.warning("Archivo de llegadas vacío: modelo en cero.")
        return FootfallModel.zeros(), []

    first, last = min(per_day), max(per_day)
    span = (last - first).days + 1
    counts = np.zeros((span, SLOT_COUNT), dtype=np.int64)
    for day, row in per_day.items():
        counts[(day - first).days] = row
    logger.info("Llegadas leídas: %s clientes en %s días", int(counts.sum()), span)
    return FootfallModel(tuple(counts.mean(axis=0))), [_day_from_counts(row) for row in counts]


def write_footfall_csv(arrivals: Sequence[Sequence[int]], start: date, path: Path) -> Path:
    """Inverso de ingest_footfall: reparte las llegadas de cada hora a lo largo de sus 60 minutos."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["timestamp"])
    for d, hours in enumerate(arrivals):
        counts = np.bincount(np.asarray(hours, dtype=np.int64), minlength=SLOT_COUNT)
        for h, c in enumerate(counts):
            for idx in range(int(c)):
                stamp = datetime.combine(start + timedelta(days=d), time(OPENING_HOUR + h, idx * 60 // c))
                writer.writerow([stamp.isoformat()])
    return atomic_write_text(path, buf.getvalue())
