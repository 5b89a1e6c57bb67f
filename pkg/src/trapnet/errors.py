"""Domain errors shared across the package."""


class TrapnetError(Exception):
    """Base class for all domain errors raised by trapnet."""


class DeploymentFormatError(TrapnetError):
    """Malformed deployment input: bad record, duplicate id, coordinate out of range."""


class GatewayError(TrapnetError):
    """Gateway/leader id unknown, isolated, or otherwise unusable."""


class UnknownNodeError(TrapnetError):
    """Node id not present in the graph."""


class ExportError(TrapnetError):
    """Unsupported export format or format/object pairing."""
