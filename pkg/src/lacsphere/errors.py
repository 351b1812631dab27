class ResourceError(RuntimeError):
    """A computation would exceed its configured work or memory budget."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""
