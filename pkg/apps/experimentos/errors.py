# apps/experimentos/errors.py


class ExperimentoError(Exception):
    pass


class FootfallParseError(ExperimentoError, ValueError):
    """Fila ilegible o fuera de horario en un CSV de llegadas."""

    def __init__(self, line: int, detail: str):
        self.line = line
        self.detail = detail
        super().__init__(f"Línea {line}: {detail}")


class InvariantError(ExperimentoError):
    """Un resultado intermedio rompió una propiedad que el mecanismo garantiza."""
