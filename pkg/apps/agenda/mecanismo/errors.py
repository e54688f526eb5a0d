# apps/agenda/mecanismo/errors.py


class MecanismoError(Exception):
    """Raíz de los errores del mecanismo de agendamiento."""


class InstanceError(MecanismoError, ValueError):
    """Instancia mal formada o dimensiones que no calzan."""


class AgentIndexError(MecanismoError, IndexError):
    pass


class InfeasibleAllocationError(MecanismoError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        detalle = "; ".join(str(v) for v in self.violations)
        super().__init__(f"Asignación infactible: {detalle}")


class InstanceTooLargeError(MecanismoError):
    pass
