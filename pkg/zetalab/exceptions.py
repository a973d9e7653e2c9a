"""
Error hierarchy shared by the library, the services and the CLI
"""


class ZetalabError(Exception):
    """Base class for every error raised on purpose by zetalab"""


class DomainError(ZetalabError, ValueError):
    """Argument outside the domain of a function, strip or parameter range"""


class DivergentTermError(DomainError):
    """A printed formula reaches a divergent term such as zeta(1)"""


class SeriesError(ZetalabError, ValueError):
    """Invalid power series operation"""


class ConfigError(ZetalabError):
    """Invalid run configuration"""
