"""Shared error type carrying a machine-readable code."""


class MagnetoError(Exception):
    """Raised on any contract violation; ``code`` is stable across versions."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
