"""Exception hierarchy shared across the package.

Two top-level families map onto the CLI exit codes: bad user input
(exit 1) and numerical trouble during a run (exit 2).
"""


class InputError(Exception):
    """Invalid user input: files, network definitions, parameters."""


class NetworkError(InputError):
    """A network description violates the vessel-network constraints."""


class ParseError(InputError):
    """A file could not be parsed; message carries the line number."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class NumericalError(Exception):
    """A computation could not be carried out at the requested settings."""


class GridError(NumericalError):
    """Time grid too coarse or too short for the requested simulation."""


class SolverError(NumericalError):
    """The hydraulic linear solve failed or did not meet tolerance."""
