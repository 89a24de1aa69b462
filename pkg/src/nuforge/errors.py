"""Exception hierarchy shared by the pipeline stages.

Every error carries the name of the stage that raised it; the CLI maps the
three top-level classes to exit codes 1, 2 and 3.
"""

from __future__ import annotations


class NuForgeError(Exception):
    exit_code = 2

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class InadmissibleInput(NuForgeError):
    """The input morphism is outside the supported class."""

    exit_code = 1


class MorphismParseError(InadmissibleInput, ValueError):
    pass


class ConsistencyError(NuForgeError):
    """An internal cross-check failed; indicates a bug, not bad input."""

    exit_code = 2


class ResourceCapExceeded(NuForgeError):
    exit_code = 3


class SynchronizationDelayNotFound(ResourceCapExceeded):
    def __init__(self, cap: int, stage: str | None = "language"):
        super().__init__(f"no synchronization delay found up to cap {cap}", stage)
        self.cap = cap


class NotUniform(NuForgeError, ValueError):
    exit_code = 1


class FieldMismatch(ValueError):
    pass
