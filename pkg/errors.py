class MarketError(Exception):
    """Base class for every error raised by the market simulator."""


# Capacity accounting
class NegativeQuantityError(MarketError):
    pass


class CapacityExceededError(MarketError):
    pass


class CapacityUnderflowError(MarketError):
    pass


class ZeroCapacityError(MarketError):
    pass


# History
class OutOfOrderError(MarketError):
    pass


# Labelling and scoring
class PriorityDomainError(MarketError):
    pass


class EmptyInputError(MarketError):
    pass


class DimensionMismatchError(MarketError):
    pass


# Auctions
class EmptyBidsError(MarketError):
    pass


class MissingDiagnosticsError(MarketError):
    pass


class NoAuctionsError(MarketError):
    pass


class ConfigError(MarketError):
    """Invalid configuration; `field` is the dotted path of the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
