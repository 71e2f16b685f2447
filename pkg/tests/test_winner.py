"""Tests for winner determination, including a brute-force oracle over random auctions."""

import numpy as np
import pytest

from errors import EmptyBidsError, MissingDiagnosticsError
from market import Bid, PreferenceWeights
from priority import priority_label
from scoring import score_bids
from winner import determine_winner


def bids_of(prices):
    return [Bid(v, "r1", float(sp)) for v, sp in prices.items()]


def test_priority_list_winner_and_average_payment():
    bids = bids_of({"v1": 100, "v2": 120, "v3": 90})
    labels = {"v1": priority_label(10, 10), "v2": priority_label(6, 10), "v3": priority_label(0, 10)}
    scores = {"v1": 0.55, "v2": 0.60, "v3": 0.95}
    result = determine_winner(bids, labels, scores, 0.4)
    assert result.priority_list == ("v1", "v2")
    assert result.winner == "v2"
    assert result.cost == 110
    assert not result.fallback


def test_single_bidder():
    for pr in (0.0, 0.4, 1.0):
        for pr_index in (0.0, 0.4, 1.0):
            result = determine_winner(bids_of({"v1": 42}), {"v1": pr}, {"v1": 1.0}, pr_index)
            assert result.winner == "v1"
            assert result.cost == 42


def test_fresh_market_falls_back_to_all_bidders():
    bids = bids_of({"v1": 100, "v2": 80, "v3": 90})
    labels = {v: 1.0 for v in ("v1", "v2", "v3")}
    scores = {"v1": 0.2, "v2": 0.7, "v3": 0.5}
    result = determine_winner(bids, labels, scores, 0.4)
    assert result.fallback
    assert set(result.priority_list) == {"v1", "v2", "v3"}
    assert result.winner == "v2"
    assert result.cost == pytest.approx(90)


def test_ties_break_on_priority_then_price_then_id():
    bids = bids_of({"v1": 100, "v2": 90, "v3": 90, "v4": 90})
    scores = {v: 0.5 for v in ("v1", "v2", "v3", "v4")}
    assert determine_winner(bids, {"v1": 0.0, "v2": 0.1, "v3": 0.1, "v4": 0.1}, scores, 1.0).winner == "v1"
    assert determine_winner(bids, {"v1": 0.1, "v2": 0.1, "v3": 0.1, "v4": 0.1}, scores, 1.0).winner == "v2"
    bids = bids_of({"v3": 90, "v2": 90})
    assert determine_winner(bids, {"v2": 0.0, "v3": 0.0}, {"v2": 0.5, "v3": 0.5}, 1.0).winner == "v2"


def test_errors():
    with pytest.raises(EmptyBidsError):
        determine_winner([], {}, {}, 0.4)
    with pytest.raises(MissingDiagnosticsError):
        determine_winner(bids_of({"v1": 10}), {}, {"v1": 1.0}, 0.4)
    with pytest.raises(MissingDiagnosticsError):
        determine_winner(bids_of({"v1": 10}), {"v1": 1.0}, {}, 0.4)


def random_auction(rng, O=10):
    n = int(rng.integers(2, 7))
    vendors = [f"v{i}" for i in rng.permutation(n)]
    raw = {}
    for v in vendors:
        if raw and rng.random() < 0.2:
            # copia exacta de otro postor para forzar empates de Q
            raw[v] = raw[vendors[int(rng.integers(len(raw)))]]
        else:
            raw[v] = (float(rng.uniform(10, 200)), float(rng.uniform(0, 1)), float(rng.uniform(0, 1)))
    losses = {v: int(rng.integers(0, O + 1)) for v in vendors}
    weights = PreferenceWeights(*rng.dirichlet(np.ones(3)))
    bids = [Bid(v, "r", *raw[v]) for v in vendors]
    return bids, losses, weights


def oracle(bids, losses, weights, O, pr_index):
    """Enumerate the priority filter, rescore from raw values and apply the tie-break rule by hand."""
    pr = {b.vendor_id: 1 - losses[b.vendor_id] / O for b in bids}
    candidates = [b for b in bids if pr[b.vendor_id] <= pr_index + 1e-12] or list(bids)
    columns = [[b.sp for b in bids], [b.availability for b in bids], [b.acceptance_rate for b in bids]]
    negative = [True, False, False]
    scaled = {b.vendor_id: [] for b in bids}
    for column, neg in zip(columns, negative):
        hi, lo = max(column), min(column)
        for b, value in zip(bids, column):
            if hi == lo:
                s = 1.0
            elif neg:
                s = (hi - value) / (hi - lo)
            else:
                s = (value - lo) / (hi - lo)
            scaled[b.vendor_id].append(s)
    q = {v: sum(s * w for s, w in zip(row, weights.values())) for v, row in scaled.items()}
    best = None
    for b in candidates:
        if best is None:
            best = b
            continue
        key_b = (q[b.vendor_id], -pr[b.vendor_id], -b.sp)
        key_best = (q[best.vendor_id], -pr[best.vendor_id], -best.sp)
        if key_b > key_best or (key_b == key_best and b.vendor_id < best.vendor_id):
            best = b
    payment = sum(b.sp for b in candidates) / len(candidates)
    return best.vendor_id, payment, {b.vendor_id for b in candidates}


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(2024)
    O, pr_index = 10, 0.4
    for _ in range(1000):
        bids, losses, weights = random_auction(rng, O)
        labels = {v: priority_label(loss, O) for v, loss in losses.items()}
        matrix = score_bids(bids, weights)
        result = determine_winner(bids, labels, matrix.scores(), pr_index)
        winner, payment, members = oracle(bids, losses, weights, O, pr_index)
        assert result.winner == winner
        assert result.cost == pytest.approx(payment, rel=1e-12)
        assert set(result.priority_list) == members


def test_result_invariants():
    rng = np.random.default_rng(77)
    for _ in range(3000):
        bids, losses, weights = random_auction(rng)
        labels = {v: priority_label(loss, 10) for v, loss in losses.items()}
        scores = score_bids(bids, weights).scores()
        pr_index = float(rng.uniform(0, 1))
        result = determine_winner(bids, labels, scores, pr_index)
        prices = {b.vendor_id: b.sp for b in bids}
        listed = [prices[v] for v in result.priority_list]
        assert result.winner in result.priority_list
        assert min(listed) <= result.cost <= max(listed)
        assert result.cost / max(prices.values()) <= 1.0
        assert determine_winner(bids, labels, scores, pr_index) == result

        # subir el índice nunca saca a nadie de la lista
        wider = determine_winner(bids, labels, scores, min(1.0, pr_index + 0.2))
        if not result.fallback:
            assert set(result.priority_list) <= set(wider.priority_list)


def test_uniform_rescaling_of_bids():
    rng = np.random.default_rng(78)
    for _ in range(1000):
        bids, losses, weights = random_auction(rng)
        a = float(rng.uniform(0.5, 3))
        scaled_bids = [Bid(b.vendor_id, b.request_id, a * b.sp, b.availability, b.acceptance_rate) for b in bids]
        labels = {v: priority_label(loss, 10) for v, loss in losses.items()}
        before = determine_winner(bids, labels, score_bids(bids, weights).scores(), 0.4)
        after = determine_winner(scaled_bids, labels, score_bids(scaled_bids, weights).scores(), 0.4)
        assert after.cost == pytest.approx(a * before.cost, rel=1e-9)
        qs = sorted(score_bids(bids, weights).scores()[v] for v in before.priority_list)
        if all(y - x > 1e-9 for x, y in zip(qs, qs[1:])):
            assert after.winner == before.winner
