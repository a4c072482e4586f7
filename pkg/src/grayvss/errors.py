"""Exception hierarchy shared by every grayvss module."""


class VSSError(Exception):
    """Base class for all grayvss errors."""


class DomainError(VSSError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DuplicateShareError(DomainError):
    """Both shares handed to reconstruction carry the same index."""


class ShapeError(VSSError, ValueError):
    """Images or shares have incompatible dimensions."""


class ImageFormatError(VSSError):
    """A graymap/bitmap file is malformed."""


class DepthError(ImageFormatError):
    """A graymap uses a maximum value other than 255."""


class ShareFormatError(VSSError):
    """A VSS3 share container is malformed."""


class MagicMismatchError(ShareFormatError):
    pass


class UnsupportedVersionError(ShareFormatError):
    pass


class UnsupportedSchemeError(ShareFormatError):
    pass


class ShareIndexError(ShareFormatError):
    pass


class UnknownDistributionError(ShareFormatError):
    pass


class TruncatedPayloadError(ShareFormatError):
    pass
