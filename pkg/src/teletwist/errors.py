"""Exception hierarchy shared by every teletwist module."""


class TeletwistError(Exception):
    """Base class for library errors."""


class ShapeError(TeletwistError, ValueError):
    """Subsystem slot out of range or dimension mismatch."""


class DomainError(TeletwistError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class CapacityError(TeletwistError):
    """A dense object would exceed the configured maximum dimension."""


class DegenerateStateError(TeletwistError, ValueError):
    """Attempt to normalize a (numerically) zero vector."""


class ZeroProbabilityError(DegenerateStateError):
    """Conditioning on a measurement outcome that cannot occur."""


class ConfigError(TeletwistError):
    """Invalid scenario configuration; ``errors`` lists every problem found."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
