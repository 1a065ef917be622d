"""Exception types shared across the package."""


class BplError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class MalformedInput(BplError, ValueError):
    exit_code = 2


class InvalidDrawing(MalformedInput):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid drawing: " + "; ".join(self.violations))


class MalformedCertificate(MalformedInput):
    pass


class InstanceTooLarge(BplError):
    exit_code = 3
