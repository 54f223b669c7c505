"""Errors raised by nilquiver; each carries the exit code the CLI reports."""

from typing import Any, List, Optional


class NilquiverError(Exception):
    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ParseError(NilquiverError):
    exit_code = 2


class InvalidInput(NilquiverError):
    exit_code = 3


class RelationViolated(InvalidInput):
    def __init__(self, relation_id: str):
        super().__init__(f"relation {relation_id} does not vanish on the given matrices")
        self.relation_id = relation_id


class InvalidFiltration(InvalidInput):
    pass


class NegativeMultiplicity(InvalidInput):
    def __init__(self, index: str, value: int, kind: str = "Δ"):
        super().__init__(f"{kind}-multiplicity of {index} is {value} < 0")
        self.index = index
        self.value = value


class IncompatibleModules(InvalidInput):
    pass


class ResolutionTooLong(InvalidInput):
    def __init__(self, max_len: int):
        super().__init__(f"projective resolution does not terminate within length {max_len}")
        self.max_len = max_len


class FiltrationCapExceeded(NilquiverError):
    exit_code = 4

    def __init__(self, cap: int, partial: Optional[List[Any]] = None):
        super().__init__(f"more than {cap} dimension filtrations to enumerate")
        self.cap = cap
        self.partial = partial or []


class TransferViolation(NilquiverError):
    """A rigidity statement that must hold failed on a concrete module."""
