"""Tests for resource bundles, vendor capacity accounting and bid pricing."""

import numpy as np
import pytest

from conftest import bundle
from errors import CapacityExceededError, CapacityUnderflowError, NegativeQuantityError, ZeroCapacityError
from market import (Bid, BuyerRequest, PreferenceParam, PreferenceWeights, ResourceType, availability,
                    bid_price, can_serve, release, reserve)


def test_resource_types():
    """Exactly four resource kinds with their units."""
    assert [k.value for k in ResourceType] == ["cpu", "memory", "storage", "bandwidth"]
    assert ResourceType.CPU.unit == "MIPS"
    assert ResourceType.BANDWIDTH.unit == "B/s"


def test_bundle_rejects_negative_quantities():
    with pytest.raises(NegativeQuantityError):
        bundle(1, 2, -3, 4)


def test_bundle_subtraction_is_checked():
    assert bundle(10) - bundle(4) == bundle(6)
    with pytest.raises(CapacityUnderflowError):
        bundle(10) - bundle(10, 10, 11, 10)


def test_can_serve(make_vendor):
    assert can_serve(make_vendor(capacity=100), bundle(50))
    assert not can_serve(make_vendor(capacity=100, allocated=100), bundle(1))
    assert can_serve(make_vendor(capacity=100, allocated=100), bundle(0))


def test_reserve_and_release(make_vendor):
    vendor = make_vendor(capacity=100)
    reserved = reserve(vendor, bundle(10))
    assert reserved.allocated == bundle(10)
    assert reserved.capacity == vendor.capacity
    assert release(reserved, bundle(10)).allocated == vendor.allocated
    assert release(reserved, bundle(0)) == reserved


def test_reserve_beyond_free_capacity(make_vendor):
    with pytest.raises(CapacityExceededError):
        reserve(make_vendor(capacity=100, allocated=95), bundle(10))


def test_release_more_than_allocated(make_vendor):
    with pytest.raises(CapacityUnderflowError):
        release(make_vendor(capacity=100, allocated=5), bundle(10))


def test_reserve_release_identity_on_whole_units(make_vendor):
    """Whole-unit bundles reserved and released in any order return to the start."""
    rng = np.random.default_rng(3)
    vendor = make_vendor(capacity=10_000, allocated=(17, 3, 0, 250))
    start = vendor.allocated
    bundles = [bundle(*rng.integers(10, 101, 4).astype(float)) for _ in range(30)]
    for rb in bundles:
        vendor = reserve(vendor, rb)
    for i in rng.permutation(len(bundles)):
        vendor = release(vendor, bundles[i])
    assert vendor.allocated == start


def test_bid_price(make_vendor):
    assert bid_price(make_vendor(base_price=1, markup=1.0), bundle(10, 20, 30, 40)) == 100
    assert bid_price(make_vendor(base_price=1, markup=1.5), bundle(10, 20, 30, 40)) == 150
    assert bid_price(make_vendor(base_price=3, markup=1.2), bundle(0)) == 0


def test_bid_price_is_linear(make_vendor):
    rng = np.random.default_rng(11)
    for _ in range(200):
        vendor = make_vendor(base_price=tuple(rng.uniform(1, 5, 4)), markup=float(rng.uniform(1, 1.5)))
        a = bundle(*rng.integers(0, 100, 4).astype(float))
        b = bundle(*rng.integers(0, 100, 4).astype(float))
        assert bid_price(vendor, a + b) == pytest.approx(bid_price(vendor, a) + bid_price(vendor, b), rel=1e-12)


def test_availability(make_vendor):
    assert availability(make_vendor(capacity=100)) == 1.0
    assert availability(make_vendor(capacity=100, allocated=100)) == 0.0
    assert availability(make_vendor(capacity=100, allocated=(0, 50, 50, 100))) == 0.5


def test_availability_zero_capacity(make_vendor):
    with pytest.raises(ZeroCapacityError):
        availability(make_vendor(capacity=(100, 0, 100, 100)))


def test_preference_weights_are_normalised():
    w = PreferenceWeights(2, 1, 1)
    assert w.values() == pytest.approx((0.5, 0.25, 0.25))
    assert PreferenceWeights(0, 3, 0).values() == (0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        PreferenceWeights(0, 0, 0)
    with pytest.raises(ValueError):
        PreferenceWeights(-1, 1, 1)


def test_bid_invariants():
    bid = Bid("v1", "r1", 42.0, 0.3, 0.9)
    assert bid.param_values[PreferenceParam.COST] == bid.sp
    with pytest.raises(ValueError):
        Bid("v1", "r1", 0.0)
    with pytest.raises(ValueError):
        Bid("v1", "r1", 10.0, availability=1.5)


def test_request_invariants():
    with pytest.raises(ValueError):
        BuyerRequest("r1", bundle(1), dl=5.0, duration=10.0, weights=PreferenceWeights(1, 1, 1), arrival_time=10.0)
    with pytest.raises(ValueError):
        BuyerRequest("r1", bundle(1), dl=20.0, duration=0.0, weights=PreferenceWeights(1, 1, 1), arrival_time=10.0)
