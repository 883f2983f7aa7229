"""Shared exception types."""


class VerificationError(RuntimeError):
    """A constructed artifact failed its own post-verification.

    Carries the offending index (``witness``) and, when available, the
    artifact that failed (``result``) so callers can still inspect or
    write it.
    """

    def __init__(self, message, witness=None, result=None):
        super().__init__(message)
        self.witness = witness
        self.result = result
