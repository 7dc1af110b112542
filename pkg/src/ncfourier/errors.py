"""Error taxonomy for the library.

Every failure mode raised by the numerical routines is a subclass of
:class:`NCFourierError`, so callers can catch one type and still
distinguish precise causes when needed.
"""


class NCFourierError(Exception):
    """Base class for all library errors."""


class InvalidDimension(NCFourierError):
    """A vector's length does not match the group dimension."""


class SeriesOutOfDomain(NCFourierError):
    """Series-mode BCH truncation error estimate exceeds the tolerance."""


class BoundaryConjugacy(NCFourierError):
    """Closed-form BCH product lies on the principal-branch boundary."""


class DegenerateElement(NCFourierError):
    """Element is central or on the principal boundary; no adapted torus basis."""


class BoundaryElement(NCFourierError):
    """Group point on the principal-branch boundary has no principal logarithm."""


class JacobianZero(NCFourierError):
    """The Haar Jacobian vanishes where a nonzero value is required."""


class WindowTooSmall(NCFourierError):
    """Branch-window tail estimate exceeds the tolerance."""


class MomentumAtOrigin(NCFourierError):
    """Fourier coefficients at p = 0 are undefined for this group."""


class NotClassFunction(NCFourierError):
    """A class-function fast path was invoked on a non-class function."""


class QuadratureUnderResolved(NCFourierError):
    """Order-doubling error estimate exceeds the target tolerance."""


class PlaneCutoffTooSmall(NCFourierError):
    """Plane-integral radial cutoff does not cover the integrand's decay."""


class MomentumCutoffTooSmall(NCFourierError):
    """Momentum-space cutoff too small for the requested accuracy."""


class DerivativeUnstable(NCFourierError):
    """Finite-difference derivative disagrees with its Richardson estimate."""


class OnSingularSet(NCFourierError):
    """Evaluation point lies on the singular set of the summation formula."""


class UnsupportedGroup(NCFourierError):
    """Operation is not defined for this group."""


class RepresentationUnsupported(NCFourierError):
    """The momentum-function representation cannot be used in this operation."""


class GridMismatch(NCFourierError):
    """Two sampled functions do not share a common grid."""


class CutoffTooSmall(NCFourierError):
    """Integration cutoff truncates a non-negligible tail."""


class SpectralCutoffTooSmall(NCFourierError):
    """Mode-sum cutoff truncates a non-negligible spectral tail."""


class WindowError(NCFourierError):
    """Malformed branch window specification."""


class EvalDomainError(NCFourierError):
    """Expression evaluation left its mathematical domain (e.g. 1/0)."""


class ExpressionSyntaxError(NCFourierError):
    """Parse failure in a function expression.

    Carries the byte offset of the failure and a description of what was
    expected there.
    """

    def __init__(self, offset, expected, message=None):
        self.offset = offset
        self.expected = expected
        super().__init__(message or f"syntax error at offset {offset}: expected {expected}")


class UnknownIdentifier(ExpressionSyntaxError):
    """An identifier in a function expression is not a known variable or function."""

    def __init__(self, offset, name):
        self.name = name
        super().__init__(offset, "known identifier", f"unknown identifier {name!r} at offset {offset}")
