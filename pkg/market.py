"""
Domain types of the resource market: resource bundles, vendors, buyer
requests and bids, plus capacity accounting and bid pricing.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum

from errors import (CapacityExceededError, CapacityUnderflowError,
                    NegativeQuantityError, ZeroCapacityError)


class ResourceType(Enum):
    CPU = "cpu"
    MEMORY = "memory"
    STORAGE = "storage"
    BANDWIDTH = "bandwidth"

    @property
    def unit(self):
        return {"cpu": "MIPS", "memory": "MB", "storage": "MB", "bandwidth": "B/s"}[self.value]


RESOURCE_TYPES = tuple(ResourceType)


class PreferenceParam(Enum):
    COST = "cost"
    AVAILABILITY = "availability"
    ACCEPTANCE_RATE = "acceptance_rate"


PREFERENCE_PARAMS = tuple(PreferenceParam)


@dataclass(frozen=True)
class ResourceBundle:
    """Quantities of the four resource types, each in its own unit."""
    cpu: float = 0.0
    memory: float = 0.0
    storage: float = 0.0
    bandwidth: float = 0.0

    def __post_init__(self):
        for kind in RESOURCE_TYPES:
            value = getattr(self, kind.value)
            if not math.isfinite(value) or value < 0:
                raise NegativeQuantityError(f"{kind.value} quantity must be finite and >= 0, got {value}")

    @classmethod
    def from_values(cls, values):
        cpu, memory, storage, bandwidth = (float(v) for v in values)
        return cls(cpu, memory, storage, bandwidth)

    def get(self, kind: ResourceType) -> float:
        return getattr(self, kind.value)

    def values(self):
        return tuple(getattr(self, kind.value) for kind in RESOURCE_TYPES)

    def fits_within(self, other: "ResourceBundle") -> bool:
        return all(a <= b for a, b in zip(self.values(), other.values()))

    def __add__(self, other):
        return ResourceBundle.from_values(a + b for a, b in zip(self.values(), other.values()))

    def __sub__(self, other):
        if not other.fits_within(self):
            raise CapacityUnderflowError(f"cannot subtract {other} from {self}")
        return ResourceBundle.from_values(a - b for a, b in zip(self.values(), other.values()))


@dataclass(frozen=True)
class PreferenceWeights:
    """Buyer weights over the preference parameters, normalised to sum 1."""
    cost: float
    availability: float
    acceptance_rate: float

    def __post_init__(self):
        raw = (self.cost, self.availability, self.acceptance_rate)
        if any(not math.isfinite(w) or w < 0 for w in raw):
            raise ValueError(f"preference weights must be finite and >= 0, got {raw}")
        total = sum(raw)
        if total <= 0:
            raise ValueError("at least one preference weight must be positive")
        for param, w in zip(PREFERENCE_PARAMS, raw):
            object.__setattr__(self, param.value, w / total)

    def get(self, param: PreferenceParam) -> float:
        return getattr(self, param.value)

    def values(self):
        return tuple(getattr(self, p.value) for p in PREFERENCE_PARAMS)


@dataclass(frozen=True)
class VendorProfile:
    vendor_id: str
    capacity: ResourceBundle
    base_price: ResourceBundle
    markup: float = 1.0
    allocated: ResourceBundle = field(default_factory=ResourceBundle)

    def __post_init__(self):
        if not self.markup > 0:
            raise ValueError(f"markup must be > 0, got {self.markup}")
        if not self.allocated.fits_within(self.capacity):
            raise CapacityExceededError(f"{self.vendor_id}: allocated {self.allocated} exceeds capacity {self.capacity}")

    @property
    def free(self) -> ResourceBundle:
        return self.capacity - self.allocated


@dataclass(frozen=True)
class BuyerRequest:
    request_id: str
    rb: ResourceBundle
    dl: float
    duration: float
    weights: PreferenceWeights
    arrival_time: float = 0.0
    max_wait: float = 0.0

    def __post_init__(self):
        if self.dl < self.arrival_time:
            raise ValueError(f"{self.request_id}: deadline {self.dl} before arrival {self.arrival_time}")
        if not self.duration > 0:
            raise ValueError(f"{self.request_id}: duration must be > 0, got {self.duration}")
        if self.max_wait < 0:
            raise ValueError(f"{self.request_id}: max_wait must be >= 0, got {self.max_wait}")

    @property
    def expiry(self):
        return self.arrival_time + self.max_wait


@dataclass(frozen=True)
class Bid:
    """A vendor's offer for one request. The cost parameter is the selling price itself."""
    vendor_id: str
    request_id: str
    sp: float
    availability: float = 1.0
    acceptance_rate: float = 1.0

    def __post_init__(self):
        if not self.sp > 0:
            raise ValueError(f"{self.vendor_id}: selling price must be > 0, got {self.sp}")
        for name in ("availability", "acceptance_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{self.vendor_id}: {name} must lie in [0, 1], got {value}")

    @property
    def param_values(self):
        return {
            PreferenceParam.COST: self.sp,
            PreferenceParam.AVAILABILITY: self.availability,
            PreferenceParam.ACCEPTANCE_RATE: self.acceptance_rate,
        }


def can_serve(vendor: VendorProfile, rb: ResourceBundle) -> bool:
    return rb.fits_within(vendor.free)


def reserve(vendor: VendorProfile, rb: ResourceBundle) -> VendorProfile:
    if not can_serve(vendor, rb):
        raise CapacityExceededError(f"{vendor.vendor_id}: request {rb} exceeds free capacity {vendor.free}")
    return replace(vendor, allocated=vendor.allocated + rb)


def release(vendor: VendorProfile, rb: ResourceBundle) -> VendorProfile:
    if not rb.fits_within(vendor.allocated):
        raise CapacityUnderflowError(f"{vendor.vendor_id}: releasing {rb} but only {vendor.allocated} allocated")
    return replace(vendor, allocated=vendor.allocated - rb)


def bid_price(vendor: VendorProfile, rb: ResourceBundle) -> float:
    # markup x sum(cantidad x precio base)
    return vendor.markup * sum(q * p for q, p in zip(rb.values(), vendor.base_price.values()))


def availability(vendor: VendorProfile) -> float:
    """Mean free-capacity fraction across the four resource types."""
    fractions = []
    for kind in RESOURCE_TYPES:
        cap = vendor.capacity.get(kind)
        if cap == 0:
            raise ZeroCapacityError(f"{vendor.vendor_id}: zero {kind.value} capacity")
        fractions.append((cap - vendor.allocated.get(kind)) / cap)
    return sum(fractions) / len(fractions)
