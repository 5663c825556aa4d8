"""Exception types shared across the package."""


class ContactLieError(Exception):
    """Base class for all errors raised by this package."""


class EmptyLayoutError(ContactLieError):
    """All six layout sizes are zero."""


class IndexRangeError(ContactLieError):
    """An index lies outside the layout's index set."""


class ConfigMismatchError(ContactLieError):
    """Operands belong to different algebra configurations."""


class NotInGammaError(ContactLieError):
    """A vector is not a member of the configured exponent group."""


class NotA1Error(ContactLieError):
    """The key does not belong to the locally-nilpotent family."""


class AlreadyNormalizedError(ContactLieError):
    """The configuration already carries the trivial time shift."""


class LayoutMismatchError(ContactLieError):
    """Two configurations have different layouts."""


class GammaMismatchError(ContactLieError):
    """The exponent groups are not matched by the given group map."""


class RootNotRationalError(ContactLieError):
    """A required root of a character value is not rational."""


class ArityError(ContactLieError):
    """A polynomial or vector field has the wrong number of variables."""


class CertificateError(ContactLieError):
    """An isomorphism certificate is malformed or unsupported."""
