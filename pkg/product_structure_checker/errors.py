from typing import Optional


class CheckerError(Exception):
    ...


class InputError(CheckerError):
    ...


class PreconditionError(InputError):
    ...


class ResourceError(CheckerError):
    ...


class ConstructionError(CheckerError):
    def __init__(self, message: str, claim: Optional[str] = None):
        super().__init__(message if claim is None else f"[{claim}] {message}")
        self.claim = claim


class InternalConsistencyError(CheckerError):
    ...
