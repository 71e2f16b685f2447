"""
Simple additive weighting over the bidders of one auction.

Scaling: every preference parameter is min-max normalised across the current
bidders so that 1 is always the best value. Weighing: the scaled row of each
bidder is combined with the buyer's normalised weights.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from errors import DimensionMismatchError, EmptyInputError
from market import PREFERENCE_PARAMS, PreferenceParam


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


POLARITY = {
    PreferenceParam.COST: Polarity.NEGATIVE,
    PreferenceParam.AVAILABILITY: Polarity.POSITIVE,
    PreferenceParam.ACCEPTANCE_RATE: Polarity.POSITIVE,
}


@dataclass(frozen=True)
class ScoreMatrix:
    vendor_ids: tuple
    scaled: np.ndarray  # (bidders, parameters)
    q: np.ndarray       # (bidders,)

    def row(self, vendor_id):
        return tuple(float(s) for s in self.scaled[self.vendor_ids.index(vendor_id)])

    def scores(self):
        return {vendor_id: float(q) for vendor_id, q in zip(self.vendor_ids, self.q)}


def scale_parameter(raw, polarity: Polarity):
    values = np.asarray(raw, dtype=float)
    if values.size == 0:
        raise EmptyInputError("cannot scale an empty parameter column")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"raw values must be finite, got {raw}")
    q_max, q_min = values.max(), values.min()
    # Rango nulo -> todos valen 1
    if q_max == q_min:
        return [1.0] * values.size
    if polarity is Polarity.NEGATIVE:
        scaled = (q_max - values) / (q_max - q_min)
    else:
        scaled = (values - q_min) / (q_max - q_min)
    return scaled.tolist()


def preference_score(scaled, weights):
    rows = np.asarray(scaled, dtype=float)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    w = np.asarray(weights.values() if hasattr(weights, "values") else weights, dtype=float)
    if rows.shape[1] != w.size:
        raise DimensionMismatchError(f"{rows.shape[1]} scaled parameters but {w.size} weights")
    q = rows @ w
    # Redondeo: Q es combinación convexa de la fila
    q = np.clip(q, rows.min(axis=1), rows.max(axis=1))
    return q.tolist()


def score_bids(bids, weights) -> ScoreMatrix:
    if not bids:
        raise EmptyInputError("no bids to score")
    columns = []
    for param in PREFERENCE_PARAMS:
        raw = [bid.param_values[param] for bid in bids]
        columns.append(scale_parameter(raw, POLARITY[param]))
    scaled = np.array(columns, dtype=float).T
    q = np.array(preference_score(scaled, weights), dtype=float)
    return ScoreMatrix(tuple(bid.vendor_id for bid in bids), scaled, q)
