"""Exception types shared across the library.

The CLI maps these onto exit codes: invalid input -> 2, numeric/domain
failures -> 3, I/O -> 4 (see :mod:`cventangle.cli`).
"""


class CVEntangleError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(CVEntangleError, ValueError):
    """Malformed or out-of-contract input."""


class SingularInputError(CVEntangleError):
    """Matrix input outside the solvable domain (e.g. not positive definite)."""


class NumericDomainError(CVEntangleError):
    """A closed-form expression was evaluated outside its numeric domain."""


class SingularLimitError(CVEntangleError):
    """Parameters sit exactly on a singular boundary of a closed form."""


class ConvergenceError(CVEntangleError):
    """A numeric integration scheme failed its self-consistency check."""


class SpectralDomainError(CVEntangleError):
    """A computed spectrum violates the bounds the caller requires."""


class TruncationError(CVEntangleError):
    """Fock-space truncation too small for the requested state."""
