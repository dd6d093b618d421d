"""Exception types shared by the package; the CLI maps them to exit codes."""

from __future__ import annotations


class InvalidInput(ValueError):
    """Bad arguments or data that violate an operation's preconditions (exit 1)."""


class InvalidComplex(InvalidInput):
    """Two boundary maps do not compose to zero."""


class Unsupported(InvalidInput):
    """The input is legal but lies outside what the formulas cover."""


class MissingDInvariant(InvalidInput):
    """No absolute grading is known for a Brieskorn sphere."""


class IdentityFailure(AssertionError):
    """A computed identity that must hold did not (exit 2)."""


class ResourceLimit(RuntimeError):
    """The request exceeds a configured size or cost bound (exit 3)."""
