"""Exception hierarchy shared by all cstex modules."""


class CstError(Exception):
    """Base class for every error raised by this package."""


class InvalidSigma(CstError):
    """A Gaussian scale parameter is zero or negative."""


class InvalidOrder(CstError):
    """A symmetry order is below 1, or the order set is empty."""


class InvalidGamma(CstError):
    """The magnitude-emphasis exponent is negative."""


class InvalidWave(CstError):
    """A wave specification violates its constraints (e.g. wavelength <= 2)."""


class KernelTooLarge(CstError):
    """Kernel radius meets or exceeds the smallest image dimension."""


class ShapeMismatch(CstError):
    """Field dimensions are inconsistent or not 2-D."""


class MissingOrder(CstError):
    """A channel label requests a symmetry order that was not computed."""


class UnknownLabel(CstError):
    """A channel label or preset name is not recognized."""


class WindowTooLarge(CstError):
    """A spectral analysis window does not fit inside the image."""


class DecodeError(CstError):
    """An image file is corrupt or truncated."""


class UnsupportedFormat(CstError):
    """An image file uses a format or feature outside the supported subset."""
