"""Exception hierarchy.

Precondition failures derive from :class:`SumProdError` (a ``ValueError``).
:class:`CertificateError` is different: it signals that an inequality which
is a proven theorem failed on a concrete input, which can only mean a bug.
"""


class SumProdError(ValueError):
    pass


class CompositeModulus(SumProdError):
    pass


class FieldMismatch(SumProdError):
    pass


class ZeroInverse(SumProdError, ZeroDivisionError):
    pass


class ZeroDenominator(SumProdError, ZeroDivisionError):
    pass


class EmptySet(SumProdError):
    pass


class ZeroInSet(SumProdError):
    pass


class SingletonSet(SumProdError):
    pass


class NotSubsetOfGroup(SumProdError):
    pass


class NoCollision(SumProdError):
    pass


class TooSmall(SumProdError):
    pass


class HypothesisNotMet(SumProdError):
    pass


class ScanTooLarge(SumProdError):
    pass


class SetSpecError(SumProdError):
    """Malformed textual set specification; ``position`` is a 0-based column."""

    def __init__(self, message, text="", position=0):
        super().__init__(message)
        self.text = text
        self.position = position

    def __str__(self):
        msg = super().__str__()
        if self.text:
            return f"{msg}\n  {self.text}\n  {' ' * self.position}^"
        return msg


class CertificateError(AssertionError):
    """A proven inequality failed on a concrete input.

    ``witness`` holds whatever describes the offending input (usually the
    sorted residues of the set) so that a scan can serialize it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
