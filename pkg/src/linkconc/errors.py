"""Exception hierarchy shared by every module."""


class LinkConcError(ValueError):
    """Base class for all input and computation errors raised by linkconc."""


class NonSquare(LinkConcError):
    pass


class SingularMatrix(LinkConcError):
    pass


class SingularPairing(LinkConcError):
    pass


class InvalidSeifertMatrix(LinkConcError):
    pass


class NonUnimodular(LinkConcError):
    pass


class SearchSpaceTooLarge(LinkConcError):
    """A bounded search or expansion would exceed its configured cap."""


class AtSingularPoint(LinkConcError):
    pass


class NonzeroLinkingNumber(LinkConcError):
    pass


class IndexOutOfRange(LinkConcError):
    pass


class NotPure(LinkConcError):
    pass


class StrandMismatch(LinkConcError):
    pass


class RankMismatch(LinkConcError):
    pass


class SizeMismatch(LinkConcError):
    pass


class NotIsomorphic(LinkConcError):
    pass


class DocumentError(LinkConcError):
    """An input document is malformed or has the wrong ``type`` tag."""
