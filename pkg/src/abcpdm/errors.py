"""Exception types shared across the package."""


class AbcPdmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AbcPdmError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SupercriticalCoupling(AbcPdmError, ValueError):
    """Coupling too strong for the channel: the effective angular parameter
    would be imaginary (fall-to-the-center regime, no normalizable state)."""


class NotABoundState(AbcPdmError, ValueError):
    """Energy outside the bound-state window |E| < m0."""


class NoBoundState(AbcPdmError, ValueError):
    """No normalizable bound state exists for the requested channel."""


class NoConvergence(AbcPdmError, RuntimeError):
    """Iterative refinement reached its limit before hitting the tolerance."""


class GridTooCoarse(AbcPdmError, ValueError):
    """Sampling grid cannot resolve the requested feature."""


class NoRootInBracket(AbcPdmError, RuntimeError):
    """Eigenvalue bracket contains no state with the requested node count."""


class NodeCountMismatch(AbcPdmError, RuntimeError):
    """Eigenvalue search landed on a state with the wrong number of nodes."""
