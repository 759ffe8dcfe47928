"""Exception hierarchy for the whole package.

Every error raised by the library derives from :class:`ChowlaLabError`, so
callers (notably the CLI) can distinguish usage mistakes from genuine check
failures and resource caps.
"""

from __future__ import annotations


class ChowlaLabError(Exception):
    """Base class for all library errors."""


# --- set construction -------------------------------------------------------

class NotSymmetricError(ChowlaLabError):
    """Some element a is present without its mirror -a."""


class ContainsZeroError(ChowlaLabError):
    """A symmetric frequency set must not contain 0."""


class NonPositiveElementError(ChowlaLabError):
    """from_positive requires strictly positive integers."""


class ZeroShiftError(ChowlaLabError):
    """Shift parameter t must be nonzero."""


class EmptySetError(ChowlaLabError):
    """Operation requires a nonempty set."""


class PreconditionViolatedError(ChowlaLabError):
    """A caller-asserted precondition was found to be false."""


# --- trig polynomials -------------------------------------------------------

class NotRealValuedError(ChowlaLabError):
    """Operation requires a real-valued polynomial (Hermitian coefficients)."""


class NotMeanZeroError(ChowlaLabError):
    """Operation requires coefficient 0 at frequency 0."""


class NonConvergenceError(ChowlaLabError):
    """Certified minimization could not reach the requested radius.

    Carries the best certificate found so far in ``certificate``.
    """

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


# --- grid functions ----------------------------------------------------------

class GridTooSmallError(ChowlaLabError):
    """Grid size below the Nyquist requirement of the sampled polynomial."""


class GridMismatchError(ChowlaLabError):
    """Binary grid operation applied to functions on different grids."""


class KTooSmallError(ChowlaLabError):
    """Claimed one-sided bound K is smaller than an observed sample value."""


class DecompositionUnavailableError(ChowlaLabError):
    """A required grid decomposition could not be constructed."""


# --- checkers ----------------------------------------------------------------

class BNotSubsetError(ChowlaLabError):
    """Test subset B must be contained in A."""


class WitnessInvalidError(ChowlaLabError):
    """Supplied witness sets do not satisfy the required inclusion."""


class HypothesisFailedError(ChowlaLabError):
    """A checker hypothesis failed; the message names which one and where."""


class SupportsNotDisjointError(ChowlaLabError):
    """Coefficient-class supports must be pairwise disjoint."""


class SingularSystemError(ChowlaLabError):
    """Coefficient extraction system is singular (duplicate class values)."""


# --- search -------------------------------------------------------------------

class TooLargeError(ChowlaLabError):
    """Enumeration size exceeds the configured cap."""
