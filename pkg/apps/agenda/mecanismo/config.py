# -*- coding: utf-8 -*-
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    ORACLE_MAX_AGENTS: int = int(os.getenv("AGENDA_ORACLE_MAX_AGENTS", "10"))
    TOLERANCE: float = float(os.getenv("AGENDA_TOLERANCE", "1e-9"))
    # Verifica costos reducidos >= 0 tras cada aumento (lento, solo depuración).
    CHECK_FLOW: bool = os.getenv("AGENDA_CHECK_FLOW", "0") == "1"


settings = Settings()
