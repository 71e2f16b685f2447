"""
Winner determination for one auction.

Bidders are sorted by priority label, the priority list keeps those at or
below the priority index, the highest preference score in the list wins and
the buyer pays the average bid of the list. If no bidder reaches the index
(a market of fresh vendors) the whole bidder set is used for that auction.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from errors import EmptyBidsError, MissingDiagnosticsError
from priority import within_priority

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BidderDiagnostics:
    pr: Optional[float]
    q: Optional[float]
    sp: float
    s_row: tuple = ()


@dataclass(frozen=True)
class AuctionResult:
    winner: str
    cost: float
    priority_list: tuple
    diagnostics: dict = field(default_factory=dict)
    fallback: bool = False


def _tiebreak_key(bid, labels, scores):
    # Mayor Q, luego menor pr, menor precio y vendor_id
    return (-scores[bid.vendor_id], labels[bid.vendor_id], bid.sp, bid.vendor_id)


def average_bid(prices):
    cost = math.fsum(prices) / len(prices)
    return min(max(cost, min(prices)), max(prices))


def determine_winner(bids, labels, scores, pr_index: float, rows=None) -> AuctionResult:
    if not bids:
        raise EmptyBidsError("an auction needs at least one bid")
    missing = [b.vendor_id for b in bids if b.vendor_id not in labels or b.vendor_id not in scores]
    if missing:
        raise MissingDiagnosticsError(f"no label or score for {', '.join(missing)}")

    ranked = sorted(bids, key=lambda b: (labels[b.vendor_id], b.vendor_id))
    priority = [b for b in ranked if within_priority(labels[b.vendor_id], pr_index)]
    fallback = not priority
    if fallback:
        logger.debug("empty priority list at pr_index=%s, using all %d bidders", pr_index, len(ranked))
        priority = ranked

    best = min(priority, key=lambda b: _tiebreak_key(b, labels, scores))
    cost = average_bid([b.sp for b in priority])
    rows = rows or {}
    diagnostics = {
        b.vendor_id: BidderDiagnostics(float(labels[b.vendor_id]), float(scores[b.vendor_id]), b.sp,
                                       tuple(rows.get(b.vendor_id, ())))
        for b in ranked
    }
    return AuctionResult(best.vendor_id, cost, tuple(b.vendor_id for b in priority), diagnostics, fallback)
