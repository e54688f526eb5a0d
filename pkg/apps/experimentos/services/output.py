# apps/experimentos/services/output.py
import csv
import io
import logging
from pathlib import Path
from typing import Iterable, Sequence

from apps.agenda.utils import atomic_write_text

logger = logging.getLogger(__name__)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """CSV completo en memoria y luego renombrado: nunca queda un archivo a medias."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([_cell(v) for v in row])
        count += 1
    path = atomic_write_text(Path(path), buf.getvalue())
    logger.info("%s filas escritas en %s", count, path)
    return path
