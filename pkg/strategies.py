"""
Allocation strategies: the fairness-prioritised multi-preference auction
(MPRA) and two price-only baselines in the style of CDARA and ICAA.
"""
from enum import Enum

from errors import EmptyBidsError
from market import Bid, availability, bid_price, can_serve
from priority import label_bids
from scoring import score_bids
from winner import AuctionResult, BidderDiagnostics, determine_winner


class StrategyKind(Enum):
    MPRA = "mpra"
    CDARA = "cdara"
    ICAA = "icaa"

    @classmethod
    def parse(cls, name):
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown strategy {name!r}, expected one of {[k.value for k in cls]}") from None


def demand_price(base: float, vendor_availability: float, alpha: float) -> float:
    """Price under load: grows linearly with the busy fraction of the vendor."""
    return base * (1 + alpha * (1 - vendor_availability))


def solicit_bids(request, vendors, kind: StrategyKind, history, alpha: float = 0.5, W: int = 10):
    bids = []
    for vendor in vendors:
        if not can_serve(vendor, request.rb):
            continue
        avail = availability(vendor)
        price = bid_price(vendor, request.rb)
        if kind is StrategyKind.ICAA:
            price = demand_price(price, avail, alpha)
        bids.append(Bid(vendor.vendor_id, request.request_id, price, avail,
                        history.acceptance_rate(vendor.vendor_id, W)))
    return bids


def allocate(request, bids, kind: StrategyKind, history, pr_index: float, O: int) -> AuctionResult:
    if not bids:
        raise EmptyBidsError(f"{request.request_id}: no bids to allocate")
    if kind is StrategyKind.MPRA:
        labels = label_bids(bids, O, history)
        matrix = score_bids(bids, request.weights)
        rows = {vendor_id: matrix.row(vendor_id) for vendor_id in matrix.vendor_ids}
        return determine_winner(bids, labels, matrix.scores(), pr_index, rows)

    # Línea base: gana el precio más bajo y paga su puja
    ranked = sorted(bids, key=lambda b: (b.sp, b.vendor_id))
    best = ranked[0]
    diagnostics = {b.vendor_id: BidderDiagnostics(None, None, b.sp) for b in ranked}
    return AuctionResult(best.vendor_id, best.sp, tuple(b.vendor_id for b in ranked), diagnostics)
