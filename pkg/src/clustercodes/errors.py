"""Exception hierarchy shared by all modules."""


class ClusterCodeError(Exception):
    """Base class for every error raised by this package."""


class NotFoundInRange(ClusterCodeError):
    """No polynomial in the searched degree range yields a certified code."""


class CertificationError(ClusterCodeError):
    """An exhaustive certificate that should hold did not."""


class Undecodable(ClusterCodeError):
    """The received syndrome does not correspond to an in-contract error."""


class NoMatch(ClusterCodeError):
    """A locator search found no admissible start position."""


class NonIntegral(ClusterCodeError):
    """A color tuple has no integral pre-image under the coloring matrix."""


class OutOfArray(ClusterCodeError):
    """A solved position lies outside the array."""


class ShapeUnsupported(ClusterCodeError):
    """No construction route handles the requested error shape."""


class NoComponentCode(ClusterCodeError):
    """A component code search was exhausted."""


class RankDeficient(ClusterCodeError):
    """Redundancy positions cannot be seated (parity-check rank too low)."""


class BudgetExceeded(ClusterCodeError):
    """An enumeration would exceed its configured case budget."""


class FormatError(ClusterCodeError):
    """A serialized artifact could not be parsed."""
