"""Exception types shared across the package."""


class RidgePromptError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(RidgePromptError, ValueError):
    """A parameter violates its documented precondition."""


class InvalidInputError(RidgePromptError, ValueError):
    """Input data (image, mask, volume) is malformed or inconsistent."""
