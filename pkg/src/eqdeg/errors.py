"""Exception types mapped to CLI exit codes."""


class EqdegError(Exception):
    exit_code = 1


class InputError(EqdegError):
    """Malformed group, representation or config input."""

    exit_code = 2


class PreconditionError(EqdegError):
    """Resonance or another violated precondition."""

    exit_code = 3


class ConsistencyError(EqdegError):
    """An internal identity failed (non-integer quotient, asymmetric Psi image)."""

    exit_code = 4
