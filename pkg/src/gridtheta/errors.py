"""Exception hierarchy shared by the core, the service and the CLI.

The service maps these onto HTTP status codes and the CLI onto exit codes:
input errors -> 400 / exit 1, resource caps -> 413 / exit 2, internal
invariant violations -> 500 / exit 3.
"""

from __future__ import annotations


class GridThetaError(Exception):
    """Base class for all package errors."""


class InputError(GridThetaError):
    """Malformed or out-of-contract input (parse errors, bad indices, ...)."""


class ResourceCapError(GridThetaError):
    """Computation refused because it exceeds the configured caps."""

    def __init__(self, message: str, *, grid_size: int | None = None,
                 estimated_states: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.grid_size = grid_size
        self.estimated_states = estimated_states
        self.cap = cap

    def details(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "estimated_states": (
                str(self.estimated_states) if self.estimated_states is not None else None
            ),
            "cap": self.cap,
        }


class NotACycleError(InputError):
    """A chain handed to a boundary test is not a cycle of the differential."""


class InternalInvariantError(GridThetaError):
    """A structural invariant the implementation guarantees was violated."""
