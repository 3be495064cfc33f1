"""Exception types shared across the simulator."""


class ConfigurationError(ValueError):
    """A configuration value is missing, out of range, or inconsistent."""


class ProtocolError(RuntimeError):
    """An operation was attempted in a device state that does not allow it."""
