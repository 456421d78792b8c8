"""Shared exception types."""


class InvariantError(RuntimeError):
    """An identity the library itself guarantees failed to hold.

    Reaching this is a bug (or a broken install), never a user input
    problem; the CLI maps it to exit code 1.
    """
