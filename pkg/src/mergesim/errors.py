"""Exception types shared across the simulator."""


class ConfigError(ValueError):
    """Invalid argument or configuration (bad n, policy name, capacities)."""


class TraceParseError(ValueError):
    """Malformed trace file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ContractViolationError(RuntimeError):
    """A policy was driven outside its documented contract."""


class InvariantViolationError(RuntimeError):
    """A simulator invariant failed while running in validation mode."""


class UndefinedImprovementError(ValueError):
    """Relative improvement against a zero baseline is undefined."""
