"""
Priority labels for bidding vendors. pr = 1 - loss/O, where loss counts the
auctions a vendor lost among its last O participations. pr = 0 is the highest
priority (a vendor that keeps losing), pr = 1 the lowest.
"""
from typing import NewType

from errors import PriorityDomainError

PriorityLabel = NewType("PriorityLabel", float)

# pr values k/O are not exact in binary
PR_TOLERANCE = 1e-12


def priority_label(loss: int, O: int) -> PriorityLabel:
    if O < 1:
        raise PriorityDomainError(f"window O must be >= 1, got {O}")
    if loss < 0 or loss > O:
        raise PriorityDomainError(f"loss must lie in [0, {O}], got {loss}")
    return PriorityLabel(1 - loss / O)


def within_priority(pr: float, pr_index: float) -> bool:
    return pr <= pr_index + PR_TOLERANCE


def label_bids(bids, O: int, history) -> dict:
    labels = {}
    for bid in bids:
        if bid.vendor_id in labels:
            raise ValueError(f"duplicate bid from {bid.vendor_id}")
        labels[bid.vendor_id] = priority_label(history.losses_in_window(bid.vendor_id, O), O)
    return labels
