"""
Transaction history of the market. Keeps every auction outcome and answers
the windowed per-vendor queries used for priority labels, acceptance rates
and the fairness metric.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from errors import OutOfOrderError


@dataclass(frozen=True)
class BidSnapshot:
    """What the auctioneer saw of one participant: price, priority label and score."""
    sp: float
    pr: Optional[float] = None
    q: Optional[float] = None


@dataclass(frozen=True)
class AuctionRecord:
    auction_seq: int
    request_id: str
    participants: tuple = ()
    solicited: tuple = ()
    winner: Optional[str] = None
    payment: Optional[float] = None
    snapshots: dict = field(default_factory=dict)
    fallback: bool = False
    episode: int = 0
    time: float = 0.0

    def __post_init__(self):
        if self.winner is not None and self.winner not in self.participants:
            raise ValueError(f"auction {self.auction_seq}: winner {self.winner} did not bid")
        if (self.winner is None) != (self.payment is None):
            raise ValueError(f"auction {self.auction_seq}: payment must be present iff a winner is")

    @property
    def max_sp(self):
        if not self.snapshots:
            return None
        return max(s.sp for s in self.snapshots.values())


@dataclass(frozen=True)
class HistoryEntry:
    auction_seq: int
    participated: bool
    won: bool


@dataclass
class VendorHistory:
    entries: list = field(default_factory=list)
    outcomes: list = field(default_factory=list)  # won flag per participation
    offered: int = 0

    def add(self, entry: HistoryEntry):
        if self.entries and entry.auction_seq <= self.entries[-1].auction_seq:
            raise OutOfOrderError(f"vendor history must grow by auction_seq, got {entry.auction_seq}")
        self.entries.append(entry)
        self.offered += 1
        if entry.participated:
            self.outcomes.append(entry.won)


class HistoryStore:
    """Single-writer store, one per scenario run."""

    def __init__(self):
        self.records = []
        self.vendors = {}
        self._wins = Counter()

    def record_auction(self, record: AuctionRecord):
        if self.records and record.auction_seq <= self.records[-1].auction_seq:
            raise OutOfOrderError(f"auction_seq {record.auction_seq} not after {self.records[-1].auction_seq}")
        self.records.append(record)
        participants = set(record.participants)
        # Ofrecidos pero sin puja cuentan como solicitudes
        for vendor_id in sorted(set(record.solicited) | participants):
            history = self.vendors.setdefault(vendor_id, VendorHistory())
            participated = vendor_id in participants
            history.add(HistoryEntry(record.auction_seq, participated, record.winner == vendor_id))
        if record.winner is not None:
            self._wins[record.winner] += 1

    def losses_in_window(self, vendor_id, O: int) -> int:
        if O < 1:
            raise ValueError(f"window O must be >= 1, got {O}")
        history = self.vendors.get(vendor_id)
        if history is None:
            return 0
        window = history.outcomes[-O:]
        return sum(1 for won in window if not won)

    def wins_in_window(self, vendor_id, O: int) -> int:
        if O < 1:
            raise ValueError(f"window O must be >= 1, got {O}")
        history = self.vendors.get(vendor_id)
        if history is None:
            return 0
        return sum(1 for won in history.outcomes[-O:] if won)

    def participations(self, vendor_id) -> int:
        history = self.vendors.get(vendor_id)
        return len(history.outcomes) if history else 0

    def acceptance_rate(self, vendor_id, W: int) -> float:
        """Fraction of the last W solicitations the vendor answered with a bid."""
        if W < 1:
            raise ValueError(f"window W must be >= 1, got {W}")
        history = self.vendors.get(vendor_id)
        if history is None or not history.entries:
            return 1.0
        window = history.entries[-W:]
        return sum(1 for e in window if e.participated) / len(window)

    def win_counts(self, vendor_ids=()):
        counts = {vendor_id: 0 for vendor_id in sorted(set(vendor_ids) | set(self.vendors))}
        counts.update(self._wins)
        return counts
