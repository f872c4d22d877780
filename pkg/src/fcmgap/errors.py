"""Exception types shared across the package."""

from __future__ import annotations


class FcmgapError(Exception):
    """Base class for all package errors."""


class DimensionError(FcmgapError):
    """A vector or matrix does not match the expected shape."""


class ConceptMismatchError(FcmgapError):
    """Maps being combined do not share an identical concept list."""


class NonConvergenceError(FcmgapError):
    """Iteration hit the step budget without reaching an attractor."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


class NoRuleFiredError(FcmgapError):
    """No rule covers the given inputs (a defined outcome for sparse bases).

    Carries the fuzzified term degrees so callers can explain which
    linguistic regions the inputs landed in.
    """

    def __init__(self, fuzzified: dict[str, dict[str, float]]):
        super().__init__("no rule fired for the given inputs")
        self.fuzzified = fuzzified


class EmptyOutputError(FcmgapError):
    """The aggregated output set is identically zero on the sample grid."""


class UnknownNameError(FcmgapError):
    """A referenced concept, variable, process, or model entry does not exist."""

    def __init__(self, kind: str, name: str, valid: tuple[str, ...] = ()):
        hint = f"; valid: {', '.join(valid)}" if valid else ""
        super().__init__(f"unknown {kind} {name!r}{hint}")
        self.kind = kind
        self.name = name
        self.valid = valid


class SignConflictError(FcmgapError):
    """An effect delta contradicts the sign of its relation cell."""


class InvalidModelError(FcmgapError):
    """A model document failed validation; ``errors`` lists each problem
    with its path in the document."""

    def __init__(self, errors: list[str]):
        super().__init__("invalid model document:\n" + "\n".join(f"  - {e}" for e in errors))
        self.errors = list(errors)
