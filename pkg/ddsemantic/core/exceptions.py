"""
Exception hierarchy shared by all features
"""

from typing import Optional


class DDSError(Exception):
    """Base class for every error raised by the toolkit"""


class ParameterError(DDSError, ValueError):
    """A value violates the domain of an operation"""

    def __init__(self, name: str, message: str):
        self.name = name
        super().__init__(f"{name}: {message}")


class ConfigError(DDSError):
    """Run configuration could not be parsed or validated"""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if key is not None:
            location.append(f"key '{key}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")


class SimulationError(DDSError):
    """The particle simulation could not produce a result"""


class HorizonError(SimulationError):
    """A requested time lies beyond the simulated horizon"""


class OutputError(DDSError):
    """Results could not be written"""


class ValidationFailure(DDSError):
    """One or more oracle comparisons failed"""
