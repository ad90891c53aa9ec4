"""Exception types shared across the package."""


class G1LabError(Exception):
    """Base class for every computational error raised by this package."""


class SingularMatrix(G1LabError):
    """A pivot fell below the rank tolerance during factorization."""


class NoConvergence(G1LabError):
    """An iterative eigenvalue or singular value computation hit its cap.

    The ``partial`` attribute carries whatever partial result was available
    at the point of failure, flagged invalid, or None.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class SpectrumHit(G1LabError):
    """A resolvent was requested at a point within rank tolerance of the spectrum."""


class ClusterNotIsolated(G1LabError):
    """No enclosing circle separates the cluster from the rest of the spectrum."""


class InvalidContour(G1LabError):
    """Contour circles overlap, or a spectral cluster sits too close to one."""


class GridTooLarge(G1LabError):
    """Requested evaluation grid exceeds the node budget."""


class NormOverflow(G1LabError):
    """A matrix power left the double-precision range; rescale the input."""
