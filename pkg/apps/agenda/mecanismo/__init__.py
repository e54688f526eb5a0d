from .baselines import ArrivalOrder, fcfs, sequential_dictator
from .errors import (
    AgentIndexError,
    InfeasibleAllocationError,
    InstanceError,
    InstanceTooLargeError,
    MecanismoError,
)
from .schema import UNALLOCATED, Allocation, Instance, Outcome, Payoff, Violation
from .vcg import MechanismConfig, delay_for_agent, run_period
from .welfare import payoff, validate, value_of, welfare

__all__ = [
    "AgentIndexError",
    "Allocation",
    "ArrivalOrder",
    "InfeasibleAllocationError",
    "Instance",
    "InstanceError",
    "InstanceTooLargeError",
    "MechanismConfig",
    "MecanismoError",
    "Outcome",
    "Payoff",
    "UNALLOCATED",
    "Violation",
    "delay_for_agent",
    "fcfs",
    "payoff",
    "run_period",
    "sequential_dictator",
    "validate",
    "value_of",
    "welfare",
]
