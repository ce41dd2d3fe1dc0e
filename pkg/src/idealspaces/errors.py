"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class IdealSpacesError(Exception):
    """Base class for all errors raised by the package."""


class RingSpecError(IdealSpacesError):
    """An invalid ring description (bad grammar or violated invariant)."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None and text is not None:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        elif position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ResourceLimitError(IdealSpacesError):
    """A configured cap was exceeded; the cap is named so it can be raised."""

    def __init__(self, cap_name: str, cap: int, detail: str = ""):
        self.cap_name = cap_name
        self.cap = cap
        msg = f"resource cap {cap_name}={cap} exceeded"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PreconditionError(IdealSpacesError):
    """An operation was called outside its precondition."""


class AxiomViolation(IdealSpacesError):
    """A constructed ring failed a ring axiom on some element triple."""

    def __init__(self, law: str, witness: tuple[int, ...]):
        self.law = law
        self.witness = witness
        super().__init__(f"ring axiom '{law}' fails on elements {witness}")
