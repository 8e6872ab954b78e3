"""Exception hierarchy shared by every solver and the CLI."""


class SchedulingError(Exception):
    """Base class for all errors raised by nrsched."""


class InvariantViolation(SchedulingError, ValueError):
    """A constructor received values that break a type invariant."""


class NonUniformRequirement(SchedulingError):
    """The algorithm needs a common resource requirement for all jobs."""


class ZeroRequirement(SchedulingError):
    """The common requirement is 0, so the resource never binds."""


class ModelMismatch(SchedulingError):
    """The instance is outside the restricted model an algorithm handles."""


class SizeLimit(SchedulingError):
    """A configured size cap (expansion, oracle, period count) was hit."""


class Unsolvable(SchedulingError):
    """Total demand exceeds total supply; no feasible schedule exists."""


class InfeasibleSchedule(SchedulingError):
    """A schedule was evaluated that violates machine or resource constraints."""


class StateSpaceExceeded(SchedulingError):
    def __init__(self, cap: int, reached: int):
        super().__init__(f"state space exceeded: {reached} states > cap {cap}")
        self.cap = cap
        self.reached = reached


class NotTerminal(SchedulingError):
    """terminal_value was called on a state that has unassigned jobs."""


class InvalidEpsilon(SchedulingError, ValueError):
    """Accuracy parameter outside (0, 1]."""


class IneligibleTuple(SchedulingError):
    """An exponent tuple whose caps cannot cover the class multiplicity."""


class InvalidProfile(SchedulingError, ValueError):
    """Unknown or malformed random-instance profile."""


class OverflowBudget(SchedulingError):
    """A generated quantity does not fit the configured bit budget."""


class ParseError(SchedulingError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
