import pytest

from history import AuctionRecord, BidSnapshot, HistoryStore
from market import BuyerRequest, PreferenceWeights, ResourceBundle, VendorProfile


def bundle(*values):
    if len(values) == 1:
        values = values * 4
    return ResourceBundle.from_values(values)


@pytest.fixture
def make_vendor():
    def _make(vendor_id="v1", capacity=100, allocated=0, base_price=1, markup=1.0):
        return VendorProfile(vendor_id, bundle(*_tup(capacity)), bundle(*_tup(base_price)), markup,
                             bundle(*_tup(allocated)))
    return _make


@pytest.fixture
def make_request():
    def _make(request_id="r1", rb=10, arrival=0.0, duration=100.0, max_wait=0.0, weights=(1, 1, 1)):
        return BuyerRequest(request_id, bundle(*_tup(rb)), arrival + max_wait, duration,
                            PreferenceWeights(*weights), arrival, max_wait)
    return _make


@pytest.fixture
def history():
    return HistoryStore()


def record(store, seq, participants, winner=None, solicited=None, payment=None, prices=None):
    """Record one auction; prices default to 100 per participant."""
    prices = prices or {}
    snapshots = {v: BidSnapshot(prices.get(v, 100.0)) for v in participants}
    if winner is not None and payment is None:
        payment = snapshots[winner].sp
    store.record_auction(AuctionRecord(seq, f"r{seq}", tuple(participants), tuple(solicited or participants),
                                       winner, payment, snapshots))


def _tup(value):
    return value if isinstance(value, tuple) else (value,)
