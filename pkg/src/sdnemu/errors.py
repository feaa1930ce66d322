"""Exception types shared across the emulator."""


class EmulatorError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "error"

    def __init__(self, message=""):
        super().__init__(message or self.code)
        self.message = message or self.code


class UnknownNode(EmulatorError):
    code = "UnknownNode"


class UnknownSwitch(EmulatorError):
    code = "UnknownSwitch"


class UnknownHost(EmulatorError):
    code = "UnknownHost"


class SameEndpoint(EmulatorError):
    code = "SameEndpoint"


class InvalidPort(EmulatorError):
    code = "InvalidPort"


class AddressMismatch(EmulatorError):
    code = "AddressMismatch"


class NoRoute(EmulatorError):
    code = "NoRoute"


class NoAliveServer(EmulatorError):
    code = "NoAliveServer"


class NoFeasiblePath(EmulatorError):
    code = "NoFeasiblePath"


class UnknownFlow(EmulatorError):
    code = "UnknownFlow"


class TimeRegression(EmulatorError):
    code = "TimeRegression"
