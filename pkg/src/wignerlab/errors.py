"""Exception types shared across the library."""


class WignerlabError(Exception):
    """Base class for all library-specific errors."""


class GridMismatchError(WignerlabError, ValueError):
    """Operands live on different lattices and cannot be combined."""


class InvariantViolation(WignerlabError, ValueError):
    """A numerical invariant of the phase-space calculus was breached.

    Raised when input data is unnormalized, non-Hermitian, unphysical,
    or when an evolution run goes numerically unstable.  Command-line
    wrappers translate this into exit code 1 (everything else that goes
    wrong is a usage or I/O problem, exit code 2).
    """
